#include "minsurf/gauss_map.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include "minsurf/detail/parallel.hpp"

namespace minsurf {
namespace {

// A rational map of degree d attains every value of the sphere exactly d
// times with multiplicity, so alpha is omitted on d iff all its preimages are
// boundary points. Every omitted value is therefore g(b) for some boundary
// point b, and the candidate list below is complete.
bool all_preimages_at_punctures(QPoly eq, const std::vector<QComplex>& punctures) {
  for (const auto& a : punctures) eq = strip_root(eq, a);
  return eq.degree() <= 0;
}

QComplex random_gaussian(std::mt19937_64& rng, int range) {
  std::uniform_int_distribution<int> u(-range, range);
  const int re = u(rng);
  const int im = u(rng);
  return QComplex(mpq_class(re), mpq_class(im));
}

MoebiusTransform<QComplex> random_moebius(std::mt19937_64& rng) {
  for (;;) {
    const QComplex a = random_gaussian(rng, 3), b = random_gaussian(rng, 3), c = random_gaussian(rng, 3),
                   d = random_gaussian(rng, 3);
    if (!(a * d - b * c).is_zero()) return MoebiusTransform<QComplex>(a, b, c, d);
  }
}

}  // namespace

const char* to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::hypothesis_failed: return "hypothesis-failed";
    case Verdict::not_applicable: return "not-applicable";
    case Verdict::equality: return "equality";
    case Verdict::holds: return "holds";
    case Verdict::counterexample: return "COUNTEREXAMPLE";
  }
  return "unknown";
}

std::vector<QPoint> exceptional_values(const QRational& g, const PuncturedPlane& d) {
  if (g.is_constant()) throw Error(ErrorKind::constant_map, "constant map has no finite exceptional set");
  std::set<QPoint> candidates;
  for (const auto& a : d.punctures()) candidates.insert(eval_extended(g, QPoint(a)));
  candidates.insert(eval_extended(g, QPoint::infinity()));

  std::vector<QPoint> out;
  for (const auto& alpha : candidates) {
    const QPoly eq = alpha.is_infinity() ? g.den() : g.num() - g.den() * alpha.value();
    if (all_preimages_at_punctures(eq, d.punctures())) out.push_back(alpha);
  }
  return out;
}

ExceptionalReport verify_main_inequality(const MetricSpec& spec, const PuncturedPlane& d) {
  ExceptionalReport rep;
  rep.completeness = is_complete(spec, d);
  bool participating = false;
  bool all_above_two = true;
  mpq_class lhs = 0;
  for (const auto& f : spec.factors()) {
    FactorReport fr;
    fr.m = f.m;
    fr.is_constant = f.g.is_constant();
    if (!fr.is_constant) {
      fr.omitted = exceptional_values(f.g, d);
      fr.q = static_cast<int>(fr.omitted.size());
      if (f.m > 0) {
        participating = true;
        if (fr.q <= 2) all_above_two = false;
      }
      if (fr.q > 2) lhs += mpq_class(f.m, fr.q - 2);
    }
    rep.factors.push_back(std::move(fr));
  }
  if (all_above_two) {
    lhs.canonicalize();
    rep.lhs = lhs;
  }
  if (!rep.completeness.overall) {
    rep.verdict = Verdict::hypothesis_failed;
  } else if (!participating || !all_above_two) {
    rep.verdict = Verdict::not_applicable;
  } else {
    rep.inequality_applicable = true;
    rep.inequality_holds = *rep.lhs >= 1;
    rep.verdict = !rep.inequality_holds ? Verdict::counterexample
                  : *rep.lhs == 1      ? Verdict::equality
                                       : Verdict::holds;
  }
  return rep;
}

R4GaussReport fujimoto_r4_check(const WeierstrassData& w, const PuncturedPlane& d) {
  R4GaussReport rep;
  rep.g1_constant = w.g1.is_constant();
  rep.g2_constant = w.g2.is_constant();
  if (rep.g1_constant && rep.g2_constant)
    throw Error(ErrorKind::flat_surface, "both Gauss map components are constant: the surface is flat");
  rep.complete = is_complete(induced_metric(w), d).overall;
  if (!rep.g1_constant) rep.q1 = static_cast<int>(exceptional_values(w.g1, d).size());
  if (!rep.g2_constant) rep.q2 = static_cast<int>(exceptional_values(w.g2, d).size());

  if (!rep.g1_constant && !rep.g2_constant) {
    rep.kind = "both-nonconstant";
    if (*rep.q1 > 2 && *rep.q2 > 2) {
      mpq_class lhs = mpq_class(1, *rep.q1 - 2) + mpq_class(1, *rep.q2 - 2);
      lhs.canonicalize();
      rep.lhs = lhs;
    }
    if (!rep.complete) {
      rep.verdict = Verdict::hypothesis_failed;
    } else if (!rep.lhs) {
      rep.verdict = Verdict::not_applicable;
    } else {
      rep.holds = *rep.lhs >= 1;
      rep.verdict = !rep.holds ? Verdict::counterexample : *rep.lhs == 1 ? Verdict::equality : Verdict::holds;
    }
  } else {
    rep.kind = "one-constant";
    const int q = rep.q1 ? *rep.q1 : *rep.q2;
    if (!rep.complete) {
      rep.verdict = Verdict::hypothesis_failed;
    } else {
      rep.holds = q <= 3;
      rep.verdict = !rep.holds ? Verdict::counterexample : q == 3 ? Verdict::equality : Verdict::holds;
    }
  }
  return rep;
}

RP2Arithmetic nonorientable_check(int q1, int q2, bool both_nonconstant) {
  RP2Arithmetic r;
  if (!both_nonconstant) {
    r.applicable = true;
    r.holds = q1 <= 1;
    r.equality = q1 == 1;
    r.impossible = !r.holds;
    r.note = "one component constant: the other omits at most 1 point of RP^2";
    return r;
  }
  if (q1 <= 1 || q2 <= 1) {
    r.note = "needs q1 > 1 and q2 > 1";
    return r;
  }
  r.applicable = true;
  mpq_class lhs = mpq_class(1, q1 - 1) + mpq_class(1, q2 - 1);
  mpq_class lifted = mpq_class(1, 2 * q1 - 2) + mpq_class(1, 2 * q2 - 2);
  lhs.canonicalize();
  lifted.canonicalize();
  r.lhs = lhs;
  r.lifted_lhs = lifted;
  r.holds = lhs >= 2;
  r.equality = lhs == 2;
  r.impossible = !r.holds;
  r.note = "q points of RP^2 lift to 2q antipodal points of the sphere, where 1/(2q1-2) + 1/(2q2-2) >= 1 applies";
  return r;
}

bool lift_equivalence(int q1, int q2) {
  if (q1 < 2 || q2 < 2) throw Error(ErrorKind::domain_error, "lift equivalence needs q1, q2 >= 2");
  const bool sphere = mpq_class(1, 2 * q1 - 2) + mpq_class(1, 2 * q2 - 2) >= 1;
  const bool rp2 = mpq_class(1, q1 - 1) + mpq_class(1, q2 - 1) >= 2;
  return sphere == rp2;
}

std::uint64_t instance_seed(std::uint64_t seed, std::uint64_t index) {
  return detail::splitmix64(seed ^ detail::splitmix64(index));
}

std::pair<MetricSpec, PuncturedPlane> random_instance(std::uint64_t iseed, const FalsifyBounds& b) {
  std::mt19937_64 rng(iseed);
  auto uni = [&rng](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };

  const int npunct = uni(b.min_punctures, b.max_punctures);
  std::vector<QComplex> punct;
  while (static_cast<int>(punct.size()) < npunct) {
    const QComplex a = random_gaussian(rng, b.coord_range);
    if (std::find(punct.begin(), punct.end(), a) == punct.end()) punct.push_back(a);
  }

  const int nfactors = uni(1, b.max_factors);
  std::vector<MetricFactor> factors;
  QRational numerator(QComplex(1));
  for (int i = 0; i < nfactors; ++i) {
    const int m = uni(0, b.max_m);
    const int kind = uni(0, 7);
    QRational g;
    if (kind == 0) {
      g = QRational(random_gaussian(rng, 3));
    } else if (kind <= 3 || punct.empty()) {
      g = random_moebius(rng).after(QRational::z());
    } else {
      // all zeros and poles of h at punctures; h omits 0 and infinity
      QRational h(QComplex(1));
      int budget = std::max(1, b.max_degree);
      for (const auto& a : punct) {
        if (budget == 0) break;
        const int k = uni(-std::min(2, budget), std::min(2, budget));
        budget -= std::abs(k);
        h = h * QRational(QPoly::linear_root(a)).pow(k);
      }
      if (h.is_constant()) h = QRational(QPoly::linear_root(punct.front()));
      g = random_moebius(rng).after(h);
    }
    if (!g.is_constant() && m > 0) {
      QPoly den = g.den();
      for (const auto& a : punct) den = strip_root(den, a);
      numerator = numerator * QRational(den).pow(m);
    }
    factors.push_back({g, m});
  }

  QComplex c = random_gaussian(rng, 3);
  if (c.is_zero()) c = QComplex(1);
  QRational omega = numerator * QRational(c);
  for (const auto& a : punct) omega = omega / QRational(QPoly::linear_root(a)).pow(uni(0, b.max_pole_order));
  return {MetricSpec(std::move(factors), omega), PuncturedPlane(std::move(punct))};
}

FalsifySummary falsify(std::uint64_t seed, int n, const FalsifyBounds& b, unsigned workers) {
  FalsifySummary s;
  s.seed = seed;
  s.requested = std::max(0, n);
  if (n <= 0) return s;
  const std::uint64_t cap = 20ULL * static_cast<std::uint64_t>(n);
  std::uint64_t next = 0;
  while (s.complete < n && next < cap) {
    const std::uint64_t batch = std::min<std::uint64_t>(cap - next, std::max<std::uint64_t>(64, 2ULL * (n - s.complete)));
    std::vector<FalsifyRow> rows(batch);
    detail::parallel_for(
        batch,
        [&](std::size_t j) {
          FalsifyRow& row = rows[j];
          row.seed = instance_seed(seed, next + j);
          const auto [spec, dom] = random_instance(row.seed, b);
          const auto rep = verify_main_inequality(spec, dom);
          row.p = static_cast<int>(dom.punctures().size()) + 1;
          for (const auto& f : rep.factors) {
            row.m.push_back(f.m);
            row.q.push_back(f.is_constant ? -1 : f.q);
          }
          row.lhs = rep.lhs;
          row.complete = rep.completeness.overall;
          row.applicable = rep.inequality_applicable;
          row.holds = rep.inequality_holds;
          row.verdict = rep.verdict;
        },
        workers);
    for (auto& row : rows) {
      ++s.attempts;
      if (row.complete) ++s.complete;
      if (row.applicable) ++s.applicable;
      if (row.verdict == Verdict::equality) ++s.equality;
      if (row.verdict == Verdict::counterexample) ++s.counterexamples;
      s.rows.push_back(std::move(row));
      if (s.complete == n) break;
    }
    next += batch;
  }
  return s;
}

std::string falsify_csv(const FalsifySummary& s) {
  std::ostringstream os;
  os << "seed,p,m,q,lhs,complete,applicable,holds,verdict\n";
  auto join = [](const std::vector<int>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ";" : "") + std::to_string(v[i]);
    return out;
  };
  for (const auto& r : s.rows) {
    os << r.seed << ',' << r.p << ',' << join(r.m) << ',' << join(r.q) << ',' << (r.lhs ? to_string(*r.lhs) : "")
       << ',' << (r.complete ? "true" : "false") << ',' << (r.applicable ? "true" : "false") << ','
       << (r.holds ? "true" : "false") << ',' << to_string(r.verdict) << '\n';
  }
  return os.str();
}

}  // namespace minsurf
