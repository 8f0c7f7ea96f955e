#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "minsurf/errors.hpp"
#include "minsurf/weierstrass.hpp"
#include "support.hpp"

using namespace minsurf;
using testing_support::q;
using testing_support::R;

namespace {

WeierstrassData catenoid() { return WeierstrassData(R("z"), R("-z"), R("1/z^2")); }
WeierstrassData flat() { return WeierstrassData(QRational(), QRational(), QRational(q(1))); }

WeierstrassData random_weierstrass(std::mt19937_64& rng, int max_degree) {
  for (;;) {
    QRational w = testing_support::random_rational(rng, max_degree);
    if (!w.is_zero()) return WeierstrassData(testing_support::random_rational(rng, max_degree),
                                             testing_support::random_rational(rng, max_degree), w);
  }
}

bool same(const WeierstrassData& a, const WeierstrassData& b) {
  return a.g1 == b.g1 && a.g2 == b.g2 && a.omega_hat == b.omega_hat;
}

std::vector<cplx> random_points(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> d(0, 1.5);
  std::vector<cplx> out;
  for (int i = 0; i < n; ++i) out.emplace_back(d(rng), d(rng));
  return out;
}

}  // namespace

TEST(Phis, Examples) {
  const PhiForms f = phis_from_data(flat());
  EXPECT_EQ(f[0], QRational(QComplex::ratio(1, 2)));
  EXPECT_EQ(f[1], QRational(QComplex(mpq_class(0), mpq_class(1, 2))));
  EXPECT_TRUE(f[2].is_zero());
  EXPECT_TRUE(f[3].is_zero());

  const PhiForms c = phis_from_data(catenoid());
  EXPECT_EQ(c[2], R("1/z"));
  EXPECT_TRUE(c[3].is_zero());
  EXPECT_EQ(c[0], R("(1-z^2)/(2*z^2)"));

  // g1 = g2 = z on the sphere minus {2, 3i, -1/2, -i/3}
  const QRational w = R("1/((z-2)*(z-3i)*(2*z+1)*(-3i*z+1))");
  const PhiForms p = phis_from_data(WeierstrassData(R("z"), R("z"), w));
  const QPoly expected_poles = QPoly::linear_root(q(2)) * QPoly::linear_root(q(0, 3)) *
                               QPoly::linear_root(QComplex::ratio(-1, 2)) *
                               QPoly::linear_root(QComplex(mpq_class(0), mpq_class(-1, 3)));
  for (int i : {0, 1, 3}) EXPECT_EQ(p[static_cast<std::size_t>(i)].den(), expected_poles);
  EXPECT_TRUE(p[2].is_zero());
}

TEST(Phis, RoundTrip) {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 200; ++t) {
    const WeierstrassData w = random_weierstrass(rng, 3);
    EXPECT_TRUE(same(data_from_phis(phis_from_data(w)), w));
  }
  EXPECT_TRUE(same(data_from_phis(phis_from_data(catenoid())), catenoid()));
  EXPECT_TRUE(same(data_from_phis(phis_from_data(flat())), flat()));
}

TEST(Phis, DegenerateFrame) {
  // phi_1 - i phi_2 == 0 with phi_3 = phi_4 = 0
  const PhiForms p({QRational(q(1)), QRational(q(0, -1)), QRational(), QRational()});
  try {
    data_from_phis(p);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::degenerate_frame);
  }
  EXPECT_THROW(WeierstrassData(R("z"), R("z"), QRational()), Error);
}

TEST(Conformality, Examples) {
  std::mt19937_64 rng(22);
  for (int t = 0; t < 200; ++t) EXPECT_TRUE(check_conformality(phis_from_data(random_weierstrass(rng, 4))));
  PhiForms c = phis_from_data(WeierstrassData(R("z"), R("z^2"), R("1")));
  c.phi[3] = c.phi[3] * QRational(q(2));
  EXPECT_FALSE(check_conformality(c));
  const CPhiForms approx_forms({R("z").approx(), R("z").approx(), R("z").approx(), R("z").approx()});
  try {
    check_conformality(approx_forms);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::requires_exact_mode);
  }
}

TEST(Conformality, InvariantUnderRationalRotations) {
  // Givens rotations with rational cosine and sine (3/5, 4/5) and (5/13, 12/13)
  std::mt19937_64 rng(23);
  const std::array<std::pair<QComplex, QComplex>, 2> cs = {
      std::pair{QComplex::ratio(3, 5), QComplex::ratio(4, 5)},
      std::pair{QComplex::ratio(5, 13), QComplex::ratio(12, 13)}};
  for (int t = 0; t < 40; ++t) {
    PhiForms p = phis_from_data(random_weierstrass(rng, 3));
    for (int k = 0; k < 3; ++k) {
      const auto& [c, s] = cs[static_cast<std::size_t>(k % 2)];
      const std::size_t i = static_cast<std::size_t>(k), j = static_cast<std::size_t>(k + 1);
      const QRational a = p.phi[i] * QRational(c) - p.phi[j] * QRational(s);
      const QRational b = p.phi[i] * QRational(s) + p.phi[j] * QRational(c);
      p.phi[i] = a;
      p.phi[j] = b;
    }
    EXPECT_TRUE(check_conformality(p));
  }
}

TEST(Conformality, R3Reduction) {
  std::mt19937_64 rng(24);
  for (int t = 0; t < 50; ++t) {
    const QRational g = testing_support::random_rational(rng, 3);
    EXPECT_TRUE(phis_from_data(WeierstrassData(g, -g, R("1"))).phi[3].is_zero());
  }
}

TEST(Regularity, Examples) {
  EXPECT_TRUE(check_regularity(phis_from_data(catenoid()), PuncturedPlane({q(0)})).regular);
  EXPECT_TRUE(check_regularity(phis_from_data(flat()), PuncturedPlane{}).regular);

  PhiForms scaled = phis_from_data(WeierstrassData(R("z"), R("z^2"), R("1")));
  for (auto& f : scaled.phi) f = f * R("z-1");
  auto r = check_regularity(scaled, PuncturedPlane{});
  EXPECT_FALSE(r.regular);
  ASSERT_EQ(r.offending.size(), 1u);
  EXPECT_NEAR(std::abs(r.offending[0].point - 1.0), 0.0, 1e-12);
  EXPECT_EQ(r.offending[0].reason, "common-zero");
  // removing the zero from the domain restores regularity
  EXPECT_TRUE(check_regularity(scaled, PuncturedPlane({q(1)})).regular);
  // a pole of the data inside the domain is flagged too
  r = check_regularity(phis_from_data(catenoid()), PuncturedPlane{});
  EXPECT_FALSE(r.regular);
  EXPECT_EQ(r.offending[0].reason, "pole");
}

TEST(InducedMetric, Identity) {
  std::mt19937_64 rng(25);
  for (int t = 0; t < 30; ++t) {
    const auto w = random_weierstrass(rng, 3);
    EXPECT_LT(induced_metric_identity(phis_from_data(w), random_points(rng, 100)), 1e-12);
  }
  const std::vector<cplx> zero = {0.0};
  EXPECT_LT(induced_metric_identity(phis_from_data(flat()), zero), 1e-15);
  const std::vector<cplx> one = {1.0};
  EXPECT_LT(induced_metric_identity(phis_from_data(catenoid()), one), 1e-15);
  EXPECT_NEAR(conformal_factor(induced_metric(catenoid()), 1.0), 2.0, 1e-15);
}

TEST(Periods, Examples) {
  const auto r = period_residues(phis_from_data(catenoid()), PuncturedPlane({q(0)}));
  EXPECT_TRUE(r.well_defined);
  ASSERT_EQ(r.entries.size(), 1u);
  EXPECT_EQ(r.entries[0].residue[0], cplx(0));
  EXPECT_EQ(r.entries[0].residue[1], cplx(0));
  EXPECT_EQ(r.entries[0].residue[2], cplx(1));
  EXPECT_TRUE(r.entries[0].exact);

  PhiForms bad = phis_from_data(catenoid());
  bad.phi[2] = R("i/z");
  EXPECT_FALSE(period_residues(bad, PuncturedPlane({q(0)})).well_defined);

  const auto none = period_residues(phis_from_data(flat()), PuncturedPlane{});
  EXPECT_TRUE(none.well_defined);
  EXPECT_TRUE(none.entries.empty());
}

TEST(Periods, AnnulusCore) {
  const auto r = period_residues(phis_from_data(catenoid()), Annulus(2.0));
  EXPECT_TRUE(r.well_defined);
  ASSERT_EQ(r.entries.size(), 1u);
  EXPECT_EQ(r.entries[0].label, "core");
  EXPECT_NEAR(std::abs(r.entries[0].residue[2] - 1.0), 0.0, 1e-9);
}

TEST(Immerse, Examples) {
  const PhiForms f = phis_from_data(flat());
  const std::vector<cplx> two = {2.0, 0.0};
  const auto x = immerse(f, PuncturedPlane{}, 0.0, two);
  EXPECT_NEAR(x[0][0], 1.0, 1e-12);
  EXPECT_NEAR(x[0][1], 0.0, 1e-12);
  EXPECT_EQ(x[1], (Vec4{0, 0, 0, 0}));

  const PhiForms c = phis_from_data(catenoid());
  const Vec4 loop = loop_period(c, 0.0, 1.0);
  for (double v : loop) EXPECT_LT(std::abs(v), 1e-10);

  PhiForms bad = c;
  bad.phi[2] = R("i/z");
  const std::vector<cplx> t = {cplx(0, 1)};
  try {
    immerse(bad, PuncturedPlane({q(0)}), 1.0, t);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::multivalued_immersion);
  }
}

TEST(Immerse, CatenoidClosedForm) {
  // x3 = Re log z = log|z|, independent of the path around the puncture
  const PhiForms c = phis_from_data(catenoid());
  const std::vector<cplx> targets = {cplx(-2, 0.1), cplx(-2, -0.1), cplx(0, 3), cplx(0.5, -0.5)};
  const auto x = immerse(c, PuncturedPlane({q(0)}), 1.0, targets);
  for (std::size_t i = 0; i < targets.size(); ++i) {
    const cplx z = targets[i];
    EXPECT_NEAR(x[i][2], std::log(std::abs(z)), 1e-9);
    // x1 = Re(-(1/z + z)/2) + 1, x2 = Re(i(z - 1/z)/2)
    EXPECT_NEAR(x[i][0], std::real(-(1.0 / z + z) / 2.0) + 1.0, 1e-9);
    EXPECT_NEAR(x[i][1], std::real(cplx(0, 0.5) * (z - 1.0 / z)), 1e-9);
    EXPECT_NEAR(x[i][3], 0.0, 1e-12);
  }
}

TEST(Immerse, Harmonic) {
  const PhiForms c = phis_from_data(catenoid());
  const double h = 1e-3;
  const cplx z0 = 1.0;
  const std::vector<cplx> s = {z0, z0 + h, z0 - h, z0 + cplx(0, h), z0 - cplx(0, h)};
  const auto x = immerse(c, PuncturedPlane({q(0)}), cplx(2, 1), s, {1e-13, 1e-6});
  for (int k = 0; k < 4; ++k) {
    const auto K = static_cast<std::size_t>(k);
    const double lap = (x[1][K] + x[2][K] + x[3][K] + x[4][K] - 4 * x[0][K]) / (h * h);
    EXPECT_LT(std::abs(lap), 1e-5);
  }
}

TEST(Mesh, FlatGrid) {
  GridParams g;
  g.n = 10;
  const Mesh m = export_mesh(phis_from_data(flat()), PuncturedPlane{}, g);
  EXPECT_EQ(m.vertices.size(), 100u);
  EXPECT_EQ(m.faces.size(), 162u);
  for (const auto& f : m.faces)
    for (int i : f) {
      EXPECT_GE(i, 0);
      EXPECT_LT(i, 100);
    }
  const std::string text = mesh_to_string(m);
  EXPECT_EQ(text.rfind("# minsurf mesh\n", 0), 0u);
  EXPECT_NE(text.find("\nf 1 "), std::string::npos);
  EXPECT_NE(text.find("\nvp "), std::string::npos);
  EXPECT_EQ(text, mesh_to_string(export_mesh(phis_from_data(flat()), PuncturedPlane{}, g)));
}

TEST(Mesh, CatenoidAnnulusFinite) {
  const Mesh m = export_mesh(phis_from_data(catenoid()), Annulus(2.0), GridParams{});
  EXPECT_FALSE(m.vertices.empty());
  EXPECT_TRUE(m.warnings.empty());
  for (const auto& v : m.vertices)
    for (double c : v) EXPECT_TRUE(std::isfinite(c));
  // x3 = log|z| + const, so the annulus spans at most 2 log 2 in x3
  double lo = 1e300, hi = -1e300;
  for (const auto& v : m.vertices) {
    lo = std::min(lo, v[2]);
    hi = std::max(hi, v[2]);
  }
  EXPECT_LE(hi - lo, 2 * std::log(2.0) + 1e-9);
}

TEST(Mesh, PuncturedPlanePatches) {
  const Mesh m = export_mesh(phis_from_data(catenoid()), PuncturedPlane({q(0)}), GridParams{});
  EXPECT_FALSE(m.vertices.empty());
  for (const auto& v : m.vertices)
    for (double c : v) EXPECT_TRUE(std::isfinite(c));
}

TEST(Mesh, RefusesIrregular) {
  PhiForms scaled = phis_from_data(WeierstrassData(R("z"), R("z^2"), R("1")));
  for (auto& f : scaled.phi) f = f * R("z-1");
  EXPECT_THROW(export_mesh(scaled, PuncturedPlane{}, GridParams{}), Error);
  PhiForms bad = phis_from_data(catenoid());
  bad.phi[2] = R("i/z");
  EXPECT_THROW(export_mesh(bad, PuncturedPlane({q(0)}), GridParams{}), Error);
}

TEST(Mesh, SkipsNonFiniteVertices) {
  Grid g{{0.0, 1.0, cplx(0, 1)}, {{0, 1, 2}}};
  const std::vector<Vec4> vals = {Vec4{0, 0, 0, 0}, Vec4{NAN, 0, 0, 0}, Vec4{1, 1, 1, 1}};
  const Mesh m = mesh_from_values(g, vals, "h");
  EXPECT_EQ(m.vertices.size(), 2u);
  EXPECT_TRUE(m.faces.empty());
  EXPECT_FALSE(m.warnings.empty());
}
