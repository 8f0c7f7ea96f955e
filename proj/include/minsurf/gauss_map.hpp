#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "minsurf/domains.hpp"
#include "minsurf/metric.hpp"
#include "minsurf/weierstrass.hpp"

namespace minsurf {

/// Values of the sphere that g never attains on d. Throws constant_map for
/// constant g.
std::vector<QPoint> exceptional_values(const QRational& g, const PuncturedPlane& d);

enum class Verdict { hypothesis_failed, not_applicable, equality, holds, counterexample };
const char* to_string(Verdict v) noexcept;

struct FactorReport {
  int m = 0;
  bool is_constant = false;
  std::vector<QPoint> omitted;  // empty for constant factors
  int q = 0;
};

struct ExceptionalReport {
  std::vector<FactorReport> factors;
  CompletenessReport completeness;
  /// sum of m_i / (q_i - 2) over nonconstant factors; set when every
  /// nonconstant factor with m_i > 0 omits more than two values.
  std::optional<mpq_class> lhs;
  bool inequality_applicable = false;
  bool inequality_holds = true;  // vacuously true when not applicable
  Verdict verdict = Verdict::not_applicable;
};

ExceptionalReport verify_main_inequality(const MetricSpec& spec, const PuncturedPlane& d);

struct R4GaussReport {
  bool complete = false;
  bool g1_constant = false;
  bool g2_constant = false;
  std::optional<int> q1, q2;  // unset for constant components
  std::string kind;           // "both-nonconstant" or "one-constant"
  std::optional<mpq_class> lhs;
  bool holds = true;
  Verdict verdict = Verdict::not_applicable;
};

/// Gauss map of a complete minimal surface in R^4: with both components
/// nonconstant and q1, q2 > 2, 1/(q1-2) + 1/(q2-2) >= 1; with one constant
/// component the other omits at most 3 values. Throws flat_surface when both
/// components are constant.
R4GaussReport fujimoto_r4_check(const WeierstrassData& w, const PuncturedPlane& d);

struct RP2Arithmetic {
  bool applicable = false;
  std::optional<mpq_class> lhs;         // 1/(q1-1) + 1/(q2-1)
  std::optional<mpq_class> lifted_lhs;  // 1/(2q1-2) + 1/(2q2-2)
  bool holds = true;
  bool equality = false;
  bool impossible = false;
  std::string note;
};

/// q1, q2 count omitted points of RP^2. With both_nonconstant false, q1 is
/// the count of the nonconstant component and q2 is ignored.
RP2Arithmetic nonorientable_check(int q1, int q2, bool both_nonconstant);
/// (1/(2q1-2) + 1/(2q2-2) >= 1) == (1/(q1-1) + 1/(q2-1) >= 2) for q1, q2 >= 2.
bool lift_equivalence(int q1, int q2);

struct FalsifyBounds {
  int min_punctures = 1;  // finite punctures
  int max_punctures = 5;
  int max_factors = 3;
  int max_m = 3;
  int max_degree = 3;  // of the maps before the Moebius twist
  int coord_range = 4;
  int max_pole_order = 2;  // of omega_hat at a puncture
};

struct FalsifyRow {
  std::uint64_t seed = 0;
  int p = 0;  // number of boundary points, infinity included
  std::vector<int> m;
  std::vector<int> q;  // -1 for constant factors
  std::optional<mpq_class> lhs;
  bool complete = false;
  bool applicable = false;
  bool holds = true;
  Verdict verdict = Verdict::not_applicable;
};

struct FalsifySummary {
  std::uint64_t seed = 0;
  int requested = 0;
  int attempts = 0;
  int complete = 0;
  int applicable = 0;
  int equality = 0;
  int counterexamples = 0;
  std::vector<FalsifyRow> rows;
};

/// One random instance (metric on a punctured plane) drawn from instance_seed.
std::pair<MetricSpec, PuncturedPlane> random_instance(std::uint64_t instance_seed, const FalsifyBounds& b);
/// Seed of the instance with the given index.
std::uint64_t instance_seed(std::uint64_t seed, std::uint64_t index);

/// Draws instances until n complete ones are found (or 20 n attempts), checks
/// each with verify_main_inequality. Rows cover every attempt in index order;
/// the result does not depend on the number of workers.
FalsifySummary falsify(std::uint64_t seed, int n, const FalsifyBounds& b = {}, unsigned workers = 0);
std::string falsify_csv(const FalsifySummary& s);

}  // namespace minsurf
