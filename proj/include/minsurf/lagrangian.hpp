#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "minsurf/domains.hpp"
#include "minsurf/gauss_map.hpp"
#include "minsurf/rational.hpp"
#include "minsurf/weierstrass.hpp"

namespace minsurf {

struct HolomorphicPair {
  QRational F1;
  QRational F2;
};

/// Poles of F1 or F2 inside d (none allowed for a working domain).
std::vector<cplx> interior_poles(const HolomorphicPair& F, const Domain& d);

struct Spinors {
  QRational S1;  // F2'
  QRational S2;  // -F1'
};

Spinors spinors(const HolomorphicPair& F);

struct LagrangianSpec {
  /// Throws degenerate when S1 and S2 both vanish identically. beta is
  /// reduced to [0, 2 pi).
  LagrangianSpec(HolomorphicPair pair, double beta);

  HolomorphicPair pair;
  double beta;
  Spinors s;
};

struct NondegeneracyReport {
  bool nondegenerate = true;
  bool identically_degenerate = false;
  std::vector<cplx> offending;
};

/// Common zeros of S1 and S2 inside d.
NondegeneracyReport nondegenerate(const HolomorphicPair& F, const Domain& d);

/// f = e^{i beta/2}/sqrt 2 (F1 - i conj F2, F2 + i conj F1).
std::array<cplx, 2> immersion_f(const LagrangianSpec& spec, cplx z);
Vec4 to_real(const std::array<cplx, 2>& f);

struct MetricCurvature {
  double lambda2 = 0;  // |S1|^2 + |S2|^2
  /// -2 |S1 S2' - S2 S1'|^2 / lambda2^3, which is -lambda^-2 Laplacian(log lambda).
  double K = 0;
  /// The same expression with the numerator not squared, as it is sometimes
  /// printed; it agrees with K only where |S1 S2' - S2 S1'| is 0 or 1.
  double K_printed = 0;
};

/// Throws degenerate where lambda2 = 0.
MetricCurvature metric_curvature(const LagrangianSpec& spec, cplx z);

struct MinimalityResiduals {
  double symplectic = 0;  // |omega_0(f_u, f_v)| / lambda2
  double harmonic = 0;    // max over the 4 real coordinates of |5-point Laplacian|
  double angle = 0;       // |Omega(f_u, f_v)/|Omega(f_u, f_v)| - e^{i beta}|, Omega = dz1 ^ dz2
  double conformal = 0;   // (||f_u|^2 - |f_v|^2| + 2|<f_u, f_v>|) / lambda2
};

enum class Corruption { none, drop_phase_second, conjugate_second };

/// Central-difference witnesses that f is Lagrangian, minimal and conformal
/// with Lagrangian angle beta. `corrupt` replaces f by a control map:
/// drop_phase_second removes e^{i beta/2} from the second component,
/// conjugate_second replaces the second component by its conjugate.
MinimalityResiduals lagrangian_minimality_check(const LagrangianSpec& spec, cplx z, double h,
                                                Corruption corrupt = Corruption::none);

struct CorollaryReport {
  bool applicable = false;  // false for a Lagrangian plane (g constant)
  bool complete = false;
  std::optional<QRational> g;
  std::optional<int> q;
  bool holds = true;
  Verdict verdict = Verdict::not_applicable;
  cplx second_component{};  // e^{i beta}, reported as is
  std::string note;
};

/// g = -S2/S1 must omit at most 3 values when (1 + |g|^2)|S1|^2 is complete.
CorollaryReport corollary_bound_check(const LagrangianSpec& spec, const PuncturedPlane& d);
/// Same check for the metric (1 + |g|^2)|omega_hat|^2 given directly.
CorollaryReport corollary_bound_check(const QRational& g, const QRational& omega_hat, const PuncturedPlane& d);

/// Mesh of the real coordinates of f over the grid of d.
Mesh lagrangian_mesh(const LagrangianSpec& spec, const Domain& d, const GridParams& grid);

}  // namespace minsurf
