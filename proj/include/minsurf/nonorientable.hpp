#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "minsurf/gauss_map.hpp"
#include "minsurf/laurent.hpp"
#include "minsurf/weierstrass.hpp"

namespace minsurf {

/// I(z) = -1/conj(z) on the plane or an annulus A(R); it has no fixed points
/// since |z|^2 = -1 has no solution.
struct InvolutionSpec {
  enum class Kind { plane, annulus };
  Kind kind = Kind::plane;

  static cplx apply(cplx z) { return -1.0 / std::conj(z); }
};

/// r^sigma(z) = conj(r(-1/conj(z))), again rational in z.
QRational reflect(const QRational& r);

struct SymmetryChecks {
  bool g1 = false;     // g1 o I = -1/conj(g1)
  bool g2 = false;     // g2 o I = -1/conj(g2)
  bool omega = false;  // I^* omega = conj(g1 g2 omega)
  bool all() const { return g1 && g2 && omega; }
};

SymmetryChecks check_weierstrass_symmetry(const WeierstrassData& w);
/// Throws requires_exact_mode.
SymmetryChecks check_weierstrass_symmetry(const CRational& g1, const CRational& g2, const CRational& omega_hat);

struct OmittedClosure {
  bool closed = false;
  int rp2_count = 0;
  std::vector<std::string> warnings;
};

OmittedClosure involution_omitted_closure(std::span<const QPoint> omitted);

/// c_0 purely imaginary and c_{-n} = (-1)^{n+1} conj(c_n) for n >= 1.
bool validate_symmetric_laurent(const QLaurent& phi);

/// The four varphi_j with phi_j = (varphi_j / z) dz on an annulus.
struct SymmetricLaurentData {
  std::array<QLaurent, 4> phi;
  bool valid() const;
};

/// sum varphi_j^2 == 0 (exact).
bool laurent_conformal(const SymmetricLaurentData& d);

struct FCandidate {
  std::vector<QComplex> b;  // b_1..b_m
  int m = 0;
  QLaurent f;               // sum_n b_n z^n + (-1)^n conj(b_n) z^-n
  std::vector<double> zero_moduli;  // moduli of the roots of z^m f
  double min_modulus_circle = 0;    // min |f| on |z| = 1
};

inline constexpr double kCircleRootTol = 1e-6;

/// Checks (b) f o I_0 = conj f exactly and (c) no zero of f within
/// kCircleRootTol of the unit circle (roots of z^m f), and records min |f|
/// on the circle by a sweep refined with Brent's method. Throws
/// condition_c_violated or domain_error (b_m = 0).
FCandidate build_f(std::vector<QComplex> b);

/// conj(f(-1/conj z)) == f(z) as a Laurent identity.
bool f_symmetric(const QLaurent& f);

struct CoverSpec {
  /// k odd, k > m; throws domain_error otherwise.
  CoverSpec(int k, int m);
  int k;
};

struct ResidueCheck {
  bool holds = false;
  QComplex residue;  // constant coefficient of varphi(z^k) f(z)
};

/// Residue at 0 of varphi(z^k) f(z) dz/z. Accepts any k >= 1 so that the
/// failure for k <= m can be exhibited.
ResidueCheck residue_condition(const QLaurent& phi, const FCandidate& f, int k);

struct PsiForms {
  std::array<QLaurent, 4> psi;  // psi_j = psi[j](z) dz/z = k f(z) varphi_j(z^k) dz/z
  bool symmetric = false;
};

/// Throws period_obstruction when a residue does not vanish.
PsiForms pullback_psi(const SymmetricLaurentData& data, const FCandidate& f, const CoverSpec& k);

struct FBounds {
  double c = 0;
  double min_mod = 0;
  double max_mod = 0;
  int k = 0;  // possibly raised from the requested k
  double r_inner = 0, r_outer = 0;
};

inline constexpr int kMaxCoverDegree = 99;

/// Smallest odd k' >= k whose closed annulus [R^{-1/k'}, R^{1/k'}] holds no
/// zero of f, then 1/c < |f| < c there by sampling both circles (maximum
/// modulus for f and 1/f), with a 1% margin. Throws k_search_exhausted.
FBounds f_bounds(const FCandidate& f, double R, int k, int samples = 4096);

struct StageResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct MoebiusOptions {
  bool check_conformality = true;
  int sandwich_samples = 1000;
  double sandwich_slack = 1e-12;
  double period_tol = 1e-8;
  std::uint64_t seed = 0;
  std::optional<std::vector<QPoint>> omitted_g1;  // declared, not computed
  std::optional<std::vector<QPoint>> omitted_g2;
  GridParams mesh{8, 16, 2.0, 1e-6, 1e-10};
  bool build_mesh = true;
};

struct MoebiusReport {
  std::vector<StageResult> stages;
  int k_requested = 0;
  int k_used = 0;
  double R = 0;
  FBounds bounds;
  std::array<QComplex, 4> residues;
  PsiForms psi;
  double sandwich_worst = 0;  // largest violation ratio, <= 1 + slack passes
  Vec4 loop_period{};
  double descent_error = 0;  // |X(I(z)) - X(z)|
  std::optional<OmittedClosure> rp2_g1, rp2_g2;
  std::optional<RP2Arithmetic> arithmetic;
  std::optional<Mesh> mesh;
  std::optional<std::string> failed_stage;
};

/// Runs the stages in order and stops at the first failure, recording its
/// name in failed_stage. The mesh covers the half annulus 0 <= arg z <= pi,
/// whose edges are glued by z ~ -1/conj(z).
MoebiusReport assemble_report(const SymmetricLaurentData& data, const FCandidate& f, int k, double R,
                              const MoebiusOptions& opt = {});
/// Throws stage_failed naming the failed stage, if any.
void require_passed(const MoebiusReport& r);

}  // namespace minsurf
