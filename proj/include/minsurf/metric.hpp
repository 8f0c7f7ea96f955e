#pragma once

#include <optional>
#include <string>
#include <vector>

#include "minsurf/domains.hpp"
#include "minsurf/rational.hpp"

namespace minsurf {

struct MetricFactor {
  QRational g;
  int m = 0;
};

/// ds^2 = prod_i (1 + |g_i|^2)^{m_i} |omega_hat|^2 |dz|^2.
class MetricSpec {
 public:
  MetricSpec(std::vector<MetricFactor> factors, QRational omega_hat);

  const std::vector<MetricFactor>& factors() const noexcept { return factors_; }
  const QRational& omega_hat() const noexcept { return omega_hat_; }

  int total_m() const;
  MetricSpec scaled(const QComplex& c) const { return MetricSpec(factors_, omega_hat_ * QRational(c)); }

 private:
  std::vector<MetricFactor> factors_;
  QRational omega_hat_;
};

/// lambda(z) with ds = lambda |dz|; +infinity at poles.
double conformal_factor(const MetricSpec& spec, cplx z);
double log_conformal_factor(const MetricSpec& spec, cplx z);

/// The integer sigma with lambda ~ C |t|^sigma in the chart t at b
/// (t = z - b, or t = 1/z at infinity, where |dz| = |dt| / |t|^2):
///   sigma = ord_b(omega_hat) - sum_i m_i max(0, -ord_b(g_i))   (finite b)
///   sigma = ord_inf(omega_hat) - 2 - sum_i m_i max(0, -ord_inf(g_i))
/// Only poles of g_i matter since 1 + |g|^2 >= 1 and is bounded near other points.
int local_exponent(const MetricSpec& spec, const QPoint& b);
/// Throws exponent_undefined for annulus circles.
int boundary_exponent(const MetricSpec& spec, const Domain& d, const BoundaryPoint& b);

struct BoundaryVerdict {
  BoundaryPoint point;
  QPoint location;
  int sigma = 0;
  bool complete = false;
};

struct CompletenessReport {
  std::vector<BoundaryVerdict> boundary;
  bool overall = false;
  std::string rationale;
};

/// Exact completeness decision by boundary exponents: complete at b iff
/// sigma(b) <= -1, overall iff complete at every boundary point.
CompletenessReport is_complete(const MetricSpec& spec, const PuncturedPlane& d);

/// A polyline, optionally ending in a tail that runs into a point of the
/// sphere: either the segment from the last vertex to an exact point, or the
/// ray from the last vertex to infinity along `direction`.
struct Path {
  std::vector<cplx> vertices;
  std::optional<QPoint> endpoint;
  cplx direction{1.0, 0.0};

  static Path segment(cplx a, cplx b) { return Path{{a, b}, std::nullopt, {}}; }
  static Path into_point(cplx start, const QComplex& b) { return Path{{start}, QPoint(b), {}}; }
  static Path to_infinity(cplx start, cplx direction) {
    return Path{{start}, QPoint::infinity(), direction};
  }
};

struct PathLength {
  bool diverged = false;
  double length = 0.0;            // partial length when diverged
  std::optional<int> endpoint_sigma;
};

inline constexpr double kDivergenceCap = 1e6;

/// Adaptive quadrature of the integral of lambda |dz|. A tail into an
/// endpoint with exponent sigma <= -1 is integrated in log-distance
/// coordinates until the partial length exceeds `cap` (diverged marker).
/// Throws invalid_path if the path crosses a singular point of lambda.
PathLength path_length(const MetricSpec& spec, const Path& path, double tol = 1e-10, double cap = kDivergenceCap);

/// K = -lambda^-2 * Laplacian(log lambda) with a 5-point stencil of step h.
double gauss_curvature_numeric(const MetricSpec& spec, cplx z, double h);

}  // namespace minsurf
