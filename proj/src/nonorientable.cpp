#include "minsurf/nonorientable.hpp"

#include <boost/math/tools/minima.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "minsurf/parse.hpp"
#include "minsurf/roots.hpp"

namespace minsurf {
namespace {

// q(z) = z^deg p * conj(p(-1/conj z)), coefficient (-1)^n conj(c_n) at deg - n.
QPoly reflect_poly(const QPoly& p) {
  const int d = p.degree();
  std::vector<QComplex> c(static_cast<std::size_t>(d + 1), QComplex(0));
  for (int n = 0; n <= d; ++n) {
    QComplex v = p.coeff(n).conj();
    if (n % 2 != 0) v = -v;
    c[static_cast<std::size_t>(d - n)] = v;
  }
  return QPoly(std::move(c));
}

// Minimum (sign = 1) or maximum (sign = -1) of |f| on |z| = r: a sweep
// followed by Brent refinement around the best sample.
double circle_extremum(const QLaurent& f, double r, int samples, double sign) {
  auto h = [&](double t) { return sign * std::abs(f(std::polar(r, t))); };
  const double step = 2.0 * std::numbers::pi / samples;
  int best = 0;
  double best_v = h(0.0);
  for (int j = 1; j < samples; ++j) {
    const double v = h(j * step);
    if (v < best_v) {
      best_v = v;
      best = j;
    }
  }
  const auto [t, v] = boost::math::tools::brent_find_minima(h, (best - 1) * step, (best + 1) * step, 40);
  (void)t;
  return sign * std::min(v, best_v);
}

QRational laurent_form(const QLaurent& l) { return (l * QLaurent::monomial(QComplex(1), -1)).to_rational(); }

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

}  // namespace

QRational reflect(const QRational& r) {
  if (r.is_zero()) return r;
  const int dn = r.num().degree(), dd = r.den().degree();
  QPoly num = reflect_poly(r.num()), den = reflect_poly(r.den());
  if (dd >= dn) num = num.shift_up(dd - dn);
  else den = den.shift_up(dn - dd);
  return QRational(num, den);
}

SymmetryChecks check_weierstrass_symmetry(const WeierstrassData& w) {
  const QRational minus_one(QComplex(-1));
  SymmetryChecks s;
  s.g1 = reflect(w.g1) * w.g1 == minus_one;
  s.g2 = reflect(w.g2) * w.g2 == minus_one;
  const QRational z2 = QRational::z() * QRational::z();
  s.omega = reflect(w.omega_hat) / z2 == w.g1 * w.g2 * w.omega_hat;
  return s;
}

SymmetryChecks check_weierstrass_symmetry(const CRational&, const CRational&, const CRational&) {
  throw Error(ErrorKind::requires_exact_mode, "symmetry conditions are exact identities");
}

OmittedClosure involution_omitted_closure(std::span<const QPoint> omitted) {
  const Rp2Count c = rp2_count(omitted);
  return {c.antipodally_closed, c.count, c.warnings};
}

bool validate_symmetric_laurent(const QLaurent& phi) {
  if (!phi.coeff(0).is_imaginary()) return false;
  const int reach = std::max(std::abs(phi.lo()), std::abs(phi.hi()));
  for (int n = 1; n <= reach; ++n) {
    QComplex expect = phi.coeff(n).conj();
    if (n % 2 == 0) expect = -expect;
    if (phi.coeff(-n) != expect) return false;
  }
  return true;
}

bool SymmetricLaurentData::valid() const {
  return std::all_of(phi.begin(), phi.end(), [](const QLaurent& l) { return validate_symmetric_laurent(l); });
}

bool laurent_conformal(const SymmetricLaurentData& d) {
  QLaurent sum;
  for (const auto& l : d.phi) sum = sum + l * l;
  return sum.is_zero();
}

bool f_symmetric(const QLaurent& f) { return f.reflect() == f; }

FCandidate build_f(std::vector<QComplex> b) {
  if (b.empty() || b.back().is_zero()) throw Error(ErrorKind::domain_error, "f needs b_m != 0");
  FCandidate out;
  out.m = static_cast<int>(b.size());
  std::vector<QComplex> c(static_cast<std::size_t>(2 * out.m + 1), QComplex(0));
  for (int n = 1; n <= out.m; ++n) {
    const QComplex& bn = b[static_cast<std::size_t>(n - 1)];
    c[static_cast<std::size_t>(out.m + n)] = bn;
    c[static_cast<std::size_t>(out.m - n)] = n % 2 == 0 ? bn.conj() : -bn.conj();
  }
  out.b = std::move(b);
  out.f = QLaurent(-out.m, c);
  if (!f_symmetric(out.f)) throw Error(ErrorKind::domain_error, "f o I_0 != conj f");

  const QPoly shifted(std::move(c));  // z^m f
  for (const auto& r : roots(shifted)) {
    const double mod = std::abs(r.value);
    for (int j = 0; j < r.multiplicity; ++j) out.zero_moduli.push_back(mod);
    if (std::abs(mod - 1.0) <= kCircleRootTol)
      throw Error(ErrorKind::condition_c_violated,
                  "f has a zero on the unit circle (|root| = " + fmt(mod) + ")");
  }
  std::sort(out.zero_moduli.begin(), out.zero_moduli.end());
  out.min_modulus_circle = circle_extremum(out.f, 1.0, 4096, 1.0);
  return out;
}

CoverSpec::CoverSpec(int k_, int m) : k(k_) {
  if (k < 1 || k % 2 == 0) throw Error(ErrorKind::domain_error, "cover degree k must be odd and positive");
  if (k <= m) throw Error(ErrorKind::domain_error, "cover degree k must exceed m");
}

ResidueCheck residue_condition(const QLaurent& phi, const FCandidate& f, int k) {
  const QComplex r = (phi.compose_power(k) * f.f).coeff(0);
  return {r.is_zero(), r};
}

PsiForms pullback_psi(const SymmetricLaurentData& data, const FCandidate& f, const CoverSpec& k) {
  PsiForms out;
  out.symmetric = true;
  for (std::size_t j = 0; j < 4; ++j) {
    const auto res = residue_condition(data.phi[j], f, k.k);
    if (!res.holds)
      throw Error(ErrorKind::period_obstruction,
                  "residue of psi_" + std::to_string(j + 1) + " is " + res.residue.str());
    out.psi[j] = QComplex(k.k) * (f.f * data.phi[j].compose_power(k.k));
    out.symmetric = out.symmetric && validate_symmetric_laurent(out.psi[j]);
  }
  return out;
}

FBounds f_bounds(const FCandidate& f, double R, int k, int samples) {
  if (!(R > 1.0)) throw Error(ErrorKind::domain_error, "f_bounds needs R > 1");
  if (k < 1 || k % 2 == 0) throw Error(ErrorKind::domain_error, "cover degree k must be odd and positive");
  FBounds out;
  for (int kk = k; kk <= kMaxCoverDegree; kk += 2) {
    const double ro = std::pow(R, 1.0 / kk), ri = 1.0 / ro;
    const bool clear = std::none_of(f.zero_moduli.begin(), f.zero_moduli.end(),
                                    [&](double m) { return m >= ri && m <= ro; });
    if (clear) {
      out.k = kk;
      out.r_inner = ri;
      out.r_outer = ro;
      break;
    }
  }
  if (out.k == 0)
    throw Error(ErrorKind::k_search_exhausted,
                "no odd k <= " + std::to_string(kMaxCoverDegree) + " keeps the zeros of f off the annulus");
  out.min_mod = std::min(circle_extremum(f.f, out.r_inner, samples, 1.0), circle_extremum(f.f, out.r_outer, samples, 1.0));
  out.max_mod =
      std::max(circle_extremum(f.f, out.r_inner, samples, -1.0), circle_extremum(f.f, out.r_outer, samples, -1.0));
  out.c = std::max(out.max_mod, 1.0 / out.min_mod) * 1.01;
  return out;
}

MoebiusReport assemble_report(const SymmetricLaurentData& data, const FCandidate& f, int k, double R,
                              const MoebiusOptions& opt) {
  MoebiusReport rep;
  rep.k_requested = k;
  rep.R = R;
  auto stage = [&rep](std::string name, bool ok, std::string detail) {
    rep.stages.push_back({name, ok, std::move(detail)});
    if (!ok) rep.failed_stage = std::move(name);
    return ok;
  };

  if (!stage("symmetric-laurent", data.valid(), "c_0 imaginary, c_{-n} = (-1)^{n+1} conj(c_n)")) return rep;
  if (opt.check_conformality) {
    if (!stage("conformality", laurent_conformal(data), "sum varphi_j^2 == 0")) return rep;
  } else {
    stage("conformality", true, "skipped (--no-conformality)");
  }
  {
    const bool near = std::any_of(f.zero_moduli.begin(), f.zero_moduli.end(),
                                  [](double m) { return std::abs(m - 1.0) <= kCircleRootTol; });
    if (!stage("f-conditions", f_symmetric(f.f) && !near && f.min_modulus_circle > 0,
               "poles at 0 and infinity only; f o I_0 = conj f; min |f| on |z|=1 is " + fmt(f.min_modulus_circle)))
      return rep;
  }
  if (!stage("cover", k >= 1 && k % 2 == 1 && k > f.m, "k = " + std::to_string(k) + ", m = " + std::to_string(f.m)))
    return rep;
  {
    bool ok = true;
    for (std::size_t j = 0; j < 4; ++j) {
      const auto r = residue_condition(data.phi[j], f, k);
      rep.residues[j] = r.residue;
      ok = ok && r.holds;
    }
    if (!stage("residue-conditions", ok, "Res_0 varphi_j(z^k) f(z) dz/z")) return rep;
  }
  try {
    rep.bounds = f_bounds(f, R, k);
  } catch (const Error& e) {
    stage("f-bounds", false, e.what());
    return rep;
  }
  rep.k_used = rep.bounds.k;
  stage("f-bounds", true,
        "k = " + std::to_string(rep.k_used) + (rep.k_used != k ? " (raised from " + std::to_string(k) + ")" : "") +
            ", c = " + fmt(rep.bounds.c));

  try {
    rep.psi = pullback_psi(data, f, CoverSpec(rep.k_used, f.m));
  } catch (const Error& e) {
    stage("psi", false, e.what());
    return rep;
  }
  if (!stage("psi", rep.psi.symmetric, "psi_j = k f(z) varphi_j(z^k) dz/z, I^* psi_j = conj psi_j")) return rep;

  const Annulus ann(rep.bounds.r_outer);
  const double kk = rep.k_used;
  {
    const auto pts = sample_grid(ann, static_cast<std::size_t>(opt.sandwich_samples), 1e-9, opt.seed);
    const double c2 = rep.bounds.c * rep.bounds.c;
    double worst = 0;
    for (const cplx z : pts) {
      const cplx zk = std::pow(z, rep.k_used);
      double pulled = 0, own = 0;
      for (std::size_t j = 0; j < 4; ++j) {
        pulled += std::norm(kk * data.phi[j](zk) / z);
        own += std::norm(rep.psi.psi[j](z) / z);
      }
      worst = std::max({worst, own / (c2 * pulled), pulled / (c2 * own)});
    }
    rep.sandwich_worst = worst;
    if (!stage("sandwich", worst <= 1.0 + opt.sandwich_slack,
               std::to_string(pts.size()) + " samples, worst ratio " + fmt(worst)))
      return rep;
  }

  const PhiForms forms({laurent_form(rep.psi.psi[0]), laurent_form(rep.psi.psi[1]), laurent_form(rep.psi.psi[2]),
                        laurent_form(rep.psi.psi[3])});
  {
    int span = 0;
    for (const auto& l : rep.psi.psi) span = std::max({span, std::abs(l.lo()), std::abs(l.hi())});
    rep.loop_period = loop_period(forms, cplx{}, 1.0, std::max(512, 4 * span + 16));
    double worst = 0;
    for (double v : rep.loop_period) worst = std::max(worst, std::abs(v));
    if (!stage("loop-periods", worst < opt.period_tol, "max |Re loop integral over |z|=1| = " + fmt(worst))) return rep;
  }
  {
    std::vector<cplx> pts;
    for (const double t : {0.3, 1.1, 2.0, 2.9}) {
      const double r = std::pow(rep.bounds.r_outer, 0.5 * std::cos(3.0 * t));
      pts.push_back(std::polar(r, t));
    }
    std::vector<cplx> targets = pts;
    for (const cplx z : pts) targets.push_back(InvolutionSpec::apply(z));
    const auto xs = immerse(forms, ann, cplx(1.0, 0.0), targets);
    double worst = 0;
    for (std::size_t i = 0; i < pts.size(); ++i)
      for (std::size_t c = 0; c < 4; ++c)
        worst = std::max(worst, std::abs(xs[i][c] - xs[i + pts.size()][c]) / std::max(1.0, std::abs(xs[i][c])));
    rep.descent_error = worst;
    if (!stage("descent", worst < 1e-8, "max |X(I z) - X(z)| = " + fmt(worst))) return rep;
  }
  if (opt.omitted_g1 && opt.omitted_g2) {
    rep.rp2_g1 = involution_omitted_closure(*opt.omitted_g1);
    rep.rp2_g2 = involution_omitted_closure(*opt.omitted_g2);
    rep.arithmetic = nonorientable_check(rep.rp2_g1->rp2_count, rep.rp2_g2->rp2_count, true);
    const bool ok = rep.rp2_g1->closed && rep.rp2_g2->closed && rep.arithmetic->holds;
    if (!stage("rp2", ok,
               "declared omitted sets give q = (" + std::to_string(rep.rp2_g1->rp2_count) + ", " +
                   std::to_string(rep.rp2_g2->rp2_count) + ") points of RP^2"))
      return rep;
  } else {
    stage("rp2", true, "skipped: no omitted sets declared");
  }

  if (opt.build_mesh) {
    const int n = std::max(2, opt.mesh.n), s = std::max(2, opt.mesh.sectors);
    Grid g;
    const double lr = std::log(rep.bounds.r_outer) * (1.0 - 1e-6);
    for (int i = 0; i < n; ++i) {
      const double r = std::exp(-lr + 2.0 * lr * i / (n - 1));
      for (int j = 0; j <= s; ++j) g.points.push_back(std::polar(r, std::numbers::pi * j / s));
    }
    for (int i = 0; i + 1 < n; ++i)
      for (int j = 0; j < s; ++j) {
        const int a = i * (s + 1) + j, b = a + 1, c = a + s + 1, e = c + 1;
        g.faces.push_back({a, c, e});
        g.faces.push_back({a, e, b});
      }
    const auto xs = immerse(forms, ann, cplx(1.0, 0.0), g.points, ImmerseOptions{opt.mesh.tol, opt.mesh.exclusion});
    std::ostringstream src;
    src << "moebius\n";
    for (const auto& l : rep.psi.psi) src << format(l) << '\n';
    src << R << ' ' << rep.k_used << ' ' << n << ' ' << s << ' ' << opt.mesh.tol;
    Mesh mesh = mesh_from_values(g, xs, source_hash(src.str()));
    mesh.notes.push_back("domain half annulus " + fmt(1.0 / rep.bounds.r_outer) + " < |z| < " +
                         fmt(rep.bounds.r_outer) + ", 0 <= arg z <= pi");
    mesh.notes.push_back("identification z ~ -1/conj(z): vertex (ring i, sector 0) ~ (ring " + std::to_string(n - 1) +
                         "-i, sector " + std::to_string(s) + ")");
    mesh.notes.push_back("rings " + std::to_string(n) + " sectors " + std::to_string(s + 1));
    rep.mesh = std::move(mesh);
    stage("mesh", true, std::to_string(rep.mesh->vertices.size()) + " vertices");
  }
  return rep;
}

void require_passed(const MoebiusReport& r) {
  if (r.failed_stage) throw Error(ErrorKind::stage_failed, "stage " + *r.failed_stage + " failed");
}

}  // namespace minsurf
