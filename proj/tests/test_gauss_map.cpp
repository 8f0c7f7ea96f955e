#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "minsurf/errors.hpp"
#include "minsurf/gauss_map.hpp"
#include "support.hpp"

using namespace minsurf;
using testing_support::q;
using testing_support::R;

namespace {

QRational inv_prod(int p) {
  QPoly den(q(1));
  for (int j = 1; j < p; ++j) den = den * QPoly::linear_root(q(j));
  return QRational(QPoly(q(1)), den);
}

PuncturedPlane integer_punctures(int p) {
  std::vector<QComplex> pts;
  for (int j = 1; j < p; ++j) pts.push_back(q(j));
  return PuncturedPlane(pts);
}

std::set<QPoint> as_set(const std::vector<QPoint>& v) { return {v.begin(), v.end()}; }

}  // namespace

TEST(ExceptionalValues, Examples) {
  const PuncturedPlane d({q(1), q(2), q(3)});
  EXPECT_EQ(as_set(exceptional_values(QRational::z(), d)),
            (std::set<QPoint>{QPoint(q(1)), QPoint(q(2)), QPoint(q(3)), QPoint::infinity()}));
  EXPECT_EQ(as_set(exceptional_values(R("z^2"), PuncturedPlane({q(0)}))),
            (std::set<QPoint>{QPoint(q(0)), QPoint::infinity()}));
  EXPECT_EQ(as_set(exceptional_values(QRational::z(), PuncturedPlane{})), (std::set<QPoint>{QPoint::infinity()}));
  try {
    exceptional_values(QRational(q(3)), d);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::constant_map);
  }
}

TEST(ExceptionalValues, PartialPreimagesAreAttained) {
  // z^2 on C \ {1}: the value 1 has preimages 1 and -1, so it is attained
  EXPECT_EQ(as_set(exceptional_values(R("z^2"), PuncturedPlane({q(1)}))), (std::set<QPoint>{QPoint::infinity()}));
  // z^2 on C \ {1, -1} omits 1
  EXPECT_EQ(as_set(exceptional_values(R("z^2"), PuncturedPlane({q(1), q(-1)}))),
            (std::set<QPoint>{QPoint(q(1)), QPoint::infinity()}));
  // (z-1)/(z-2) omits 0, infinity and its value at infinity, 1
  EXPECT_EQ(as_set(exceptional_values(R("(z-1)/(z-2)"), PuncturedPlane({q(1), q(2)}))),
            (std::set<QPoint>{QPoint(q(0)), QPoint(q(1)), QPoint::infinity()}));
}

TEST(ExceptionalValues, BruteForceGrid) {
  // values hit by sampling g over a dense grid are never reported omitted
  const QRational g = R("(z^2-1)/(z-2)");
  const PuncturedPlane d({q(1), q(-1), q(2)});
  const auto omitted = exceptional_values(g, d);
  for (const auto& v : omitted) {
    if (v.is_infinity()) continue;
    const QPoly eq = g.num() - g.den() * v.value();
    // every finite preimage is a puncture
    for (const auto& r : roots(eq)) {
      bool at_puncture = false;
      for (const auto& p : d.punctures()) at_puncture |= std::abs(r.value - p.to_complex()) < 1e-9;
      EXPECT_TRUE(at_puncture);
    }
  }
  EXPECT_LE(omitted.size(), boundary_points(Domain(d)).size());
}

TEST(ExceptionalValues, MoebiusEquivariant) {
  std::mt19937_64 rng(12);
  const PuncturedPlane d({q(0), q(1), q(0, 2)});
  const std::vector<QRational> maps = {R("z"), R("z^2/(z-1)"), R("(z-1)*z^2")};
  for (int t = 0; t < 30; ++t) {
    const QComplex a = testing_support::random_q(rng), b = testing_support::random_q(rng),
                   c = testing_support::random_q(rng), e = testing_support::random_q(rng);
    if ((a * e - b * c).is_zero()) continue;
    const MoebiusTransform<QComplex> T(a, b, c, e);
    for (const auto& g : maps) {
      std::set<QPoint> mapped;
      for (const auto& v : exceptional_values(g, d)) mapped.insert(T(v));
      EXPECT_EQ(as_set(exceptional_values(T.after(g), d)), mapped);
    }
  }
}

TEST(MainInequality, Examples) {
  auto r = verify_main_inequality(MetricSpec({{R("z"), 1}, {R("z"), 1}}, inv_prod(4)), integer_punctures(4));
  EXPECT_TRUE(r.inequality_applicable);
  ASSERT_TRUE(r.lhs);
  EXPECT_EQ(*r.lhs, mpq_class(1));
  EXPECT_EQ(r.verdict, Verdict::equality);

  r = verify_main_inequality(MetricSpec({{R("z"), 1}, {R("z"), 1}}, inv_prod(5)), integer_punctures(5));
  EXPECT_FALSE(r.inequality_applicable);
  EXPECT_EQ(r.verdict, Verdict::hypothesis_failed);

  r = verify_main_inequality(MetricSpec({{R("z"), 2}}, inv_prod(4)), integer_punctures(4));
  EXPECT_TRUE(r.inequality_applicable);
  EXPECT_EQ(*r.lhs, mpq_class(1));
  EXPECT_TRUE(r.inequality_holds);
}

TEST(MainInequality, MixedFactorsNotApplicable) {
  // g2 = z^2 omits only {0, inf} on C \ {0, 1}: q = 2, so the theorem says nothing
  const PuncturedPlane d({q(0), q(1)});
  const auto r = verify_main_inequality(MetricSpec({{R("z"), 1}, {R("z^2"), 1}}, R("1/(z^2-z)")), d);
  EXPECT_EQ(r.factors[0].q, 3);
  EXPECT_EQ(r.factors[1].q, 2);
  EXPECT_FALSE(r.inequality_applicable);
  EXPECT_FALSE(r.lhs);
  EXPECT_EQ(r.verdict, Verdict::not_applicable);
  EXPECT_TRUE(r.inequality_holds);
}

TEST(MainInequality, ConstantFactorsExcluded) {
  const auto r =
      verify_main_inequality(MetricSpec({{R("z"), 2}, {QRational(q(5)), 3}}, inv_prod(4)), integer_punctures(4));
  ASSERT_EQ(r.factors.size(), 2u);
  EXPECT_TRUE(r.factors[1].is_constant);
  EXPECT_EQ(*r.lhs, mpq_class(1));
}

TEST(MainInequality, FamilySweep) {
  for (int p = 3; p <= 8; ++p) {
    for (int a = 0; a <= 3; ++a) {
      for (int b = -1; b <= 3; ++b) {
        std::vector<MetricFactor> f = {{R("z"), a}};
        int sum = a;
        if (b >= 0) {
          f.push_back({R("z"), b});
          sum += b;
        }
        if (sum == 0) continue;
        const auto r = verify_main_inequality(MetricSpec(f, inv_prod(p)), integer_punctures(p));
        ASSERT_TRUE(r.lhs);
        EXPECT_EQ(*r.lhs, mpq_class(sum) / (p - 2));
        EXPECT_EQ(r.completeness.overall, p <= 2 + sum);
        if (r.completeness.overall) {
          EXPECT_EQ(r.verdict, p == 2 + sum ? Verdict::equality : Verdict::holds);
        } else {
          EXPECT_EQ(r.verdict, Verdict::hypothesis_failed);
        }
      }
    }
  }
}

TEST(FujimotoR4, Examples) {
  auto r = fujimoto_r4_check(WeierstrassData(R("z"), R("z"), inv_prod(4)), integer_punctures(4));
  EXPECT_TRUE(r.complete);
  EXPECT_EQ(r.kind, "both-nonconstant");
  EXPECT_EQ(*r.q1, 4);
  EXPECT_EQ(*r.q2, 4);
  EXPECT_EQ(*r.lhs, mpq_class(1));
  EXPECT_TRUE(r.holds);

  r = fujimoto_r4_check(WeierstrassData(R("z"), QRational(q(2)), R("1/(z-1)")), PuncturedPlane({q(1)}));
  EXPECT_TRUE(r.complete);
  EXPECT_EQ(r.kind, "one-constant");
  EXPECT_EQ(*r.q1, 2);
  EXPECT_FALSE(r.q2);
  EXPECT_TRUE(r.holds);

  r = fujimoto_r4_check(WeierstrassData(R("z"), R("z"), inv_prod(6)), integer_punctures(6));
  EXPECT_FALSE(r.complete);
  EXPECT_EQ(r.verdict, Verdict::hypothesis_failed);

  try {
    fujimoto_r4_check(WeierstrassData(QRational(q(1)), QRational(q(2)), R("1")), PuncturedPlane{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::flat_surface);
  }
}

TEST(NonorientableArithmetic, Examples) {
  auto a = nonorientable_check(2, 2, true);
  EXPECT_TRUE(a.applicable);
  EXPECT_EQ(*a.lhs, mpq_class(2));
  EXPECT_EQ(*a.lifted_lhs, mpq_class(1));
  EXPECT_TRUE(a.equality);
  EXPECT_TRUE(a.holds);

  a = nonorientable_check(3, 2, true);
  EXPECT_EQ(*a.lhs, mpq_class(3, 2));
  EXPECT_FALSE(a.holds);
  EXPECT_TRUE(a.impossible);

  a = nonorientable_check(1, 0, false);
  EXPECT_TRUE(a.holds);
  EXPECT_FALSE(a.impossible);
  EXPECT_TRUE(nonorientable_check(2, 0, false).impossible);
}

TEST(NonorientableArithmetic, LiftEquivalenceExhaustive) {
  for (int a = 2; a <= 20; ++a)
    for (int b = 2; b <= 20; ++b) {
      EXPECT_TRUE(lift_equivalence(a, b));
      const bool direct = mpq_class(1, a - 1) + mpq_class(1, b - 1) >= 2;
      EXPECT_EQ(nonorientable_check(a, b, true).holds, direct);
    }
}

TEST(Falsify, ZeroAndSmallRuns) {
  const auto empty = falsify(1, 0);
  EXPECT_EQ(empty.attempts, 0);
  EXPECT_TRUE(empty.rows.empty());

  const auto s = falsify(2024, 60);
  EXPECT_EQ(s.counterexamples, 0);
  EXPECT_EQ(s.complete, 60);
  EXPECT_EQ(static_cast<int>(s.rows.size()), s.attempts);
  EXPECT_GT(s.applicable, 0);
  for (const auto& row : s.rows) EXPECT_NE(row.verdict, Verdict::counterexample);
}

TEST(Falsify, IndependentOfWorkerCount) {
  const auto a = falsify(99, 40, {}, 1);
  const auto b = falsify(99, 40, {}, 4);
  EXPECT_EQ(falsify_csv(a), falsify_csv(b));
  EXPECT_EQ(falsify_csv(a).rfind("seed,p,m,q,lhs,complete,applicable,holds,verdict\n", 0), 0u);
}

TEST(Falsify, IncompleteOnlyBoundsGiveNoApplicable) {
  // many punctures, no metric factors with weight: exponent at infinity stays >= 0
  FalsifyBounds b;
  b.min_punctures = 5;
  b.max_punctures = 5;
  b.max_m = 0;
  b.max_pole_order = 0;
  const auto s = falsify(5, 10, b);
  EXPECT_EQ(s.applicable, 0);
  EXPECT_EQ(s.complete, 0);
  EXPECT_EQ(s.attempts, 200);
}

TEST(Falsify, RandomInstancesAreDeterministic) {
  const auto [s1, d1] = random_instance(instance_seed(7, 3), {});
  const auto [s2, d2] = random_instance(instance_seed(7, 3), {});
  EXPECT_EQ(d1.punctures(), d2.punctures());
  EXPECT_EQ(s1.omega_hat(), s2.omega_hat());
  EXPECT_NE(instance_seed(7, 3), instance_seed(7, 4));
}
