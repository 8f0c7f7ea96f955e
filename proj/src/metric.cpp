#include "minsurf/metric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "minsurf/detail/quadrature.hpp"
#include "minsurf/errors.hpp"
#include "minsurf/roots.hpp"

namespace minsurf {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// log(1 + e^x) without overflow.
double softplus(double x) { return x > 0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x)); }

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// lambda near a point of the sphere, evaluated through the local forms of
// omega_hat and the g_i so that it stays accurate when the chart coordinate
// t underflows or the point runs off to infinity.
class LocalMetric {
 public:
  LocalMetric(const MetricSpec& spec, const QPoint& b)
      : omega_(local_form(spec.omega_hat(), b)), at_infinity_(b.is_infinity()) {
    for (const auto& f : spec.factors()) {
      if (f.m == 0 || f.g.is_zero()) continue;
      factors_.push_back({local_form(f.g, b), f.m});
    }
  }

  // log lambda at chart coordinate t with log|t| supplied separately.
  double log_lambda(cplx t, double log_abs_t) const {
    double acc = omega_.order * log_abs_t + std::log(std::abs(omega_.regular(t)));
    for (const auto& [lf, m] : factors_) {
      const double log_g = lf.order * log_abs_t + std::log(std::abs(lf.regular(t)));
      acc += 0.5 * m * softplus(2.0 * log_g);
    }
    return acc;
  }

  bool at_infinity() const noexcept { return at_infinity_; }

 private:
  LocalForm omega_;
  std::vector<std::pair<LocalForm, int>> factors_;
  bool at_infinity_;
};

// Finite points where lambda can blow up: poles of omega_hat and of weighted g_i.
std::vector<cplx> singular_candidates(const MetricSpec& spec) {
  std::vector<cplx> out;
  auto add = [&out](const QPoly& den) {
    if (den.degree() <= 0) return;
    for (const auto& r : roots(den)) out.push_back(r.value);
  };
  add(spec.omega_hat().den());
  for (const auto& f : spec.factors())
    if (f.m > 0) add(f.g.den());
  return out;
}

bool is_singular(const MetricSpec& spec, cplx c) {
  const CPoint p(c);
  int sigma = order_at(spec.omega_hat().approx(), p, 1e-7);
  for (const auto& f : spec.factors())
    if (f.m > 0 && !f.g.is_zero()) sigma -= f.m * std::max(0, -order_at(f.g.approx(), p, 1e-7));
  return sigma < 0;
}

double dist_to_segment(cplx c, cplx a, cplx b, double* param) {
  const cplx d = b - a;
  const double len2 = std::norm(d);
  double t = len2 > 0 ? ((c - a) * std::conj(d)).real() / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  if (param) *param = t;
  return std::abs(c - (a + t * d));
}

void check_segment(const MetricSpec& spec, const std::vector<cplx>& cands, cplx a, cplx b, bool open_end) {
  const double scale = std::max({1.0, std::abs(a), std::abs(b)});
  for (const cplx c : cands) {
    double t = 0;
    if (dist_to_segment(c, a, b, &t) > 1e-12 * scale) continue;
    if (open_end && t >= 1.0) continue;
    if (is_singular(spec, c)) throw Error(ErrorKind::invalid_path, "path passes through a pole of the metric");
  }
}

double segment_length(const MetricSpec& spec, cplx a, cplx b, double tol) {
  const double len = std::abs(b - a);
  if (len == 0) return 0.0;
  return detail::integrate([&](double t) { return conformal_factor(spec, a + t * (b - a)) * len; }, 0.0, 1.0, tol);
}

struct TailResult {
  double length;
  bool hit_cap;
};

// Integral over s = log r of lambda(z(s)) * e^s, in chunks of doubling length
// marching towards the endpoint (dir = -1: r -> 0, dir = +1: r -> infinity).
TailResult tail_length(const LocalMetric& lm, int sigma, double s0, int dir, cplx center, cplx u, double tol,
                       double cap) {
  auto integrand = [&](double s) {
    cplx t;
    double log_t;
    if (!lm.at_infinity()) {
      t = std::exp(s) * u;
      log_t = s;
    } else {
      const cplx w = u + center * std::exp(-s);  // z = e^s w
      t = std::exp(-s) / w;
      log_t = -(s + std::log(std::abs(w)));
    }
    return std::exp(lm.log_lambda(t, log_t) + s);
  };
  double sum = 0;
  double a = s0;
  double len = 1.0;
  for (int chunk = 0; chunk < 64; ++chunk) {
    const double b = a + dir * len;
    const double piece = dir < 0 ? detail::integrate(integrand, b, a, tol) : detail::integrate(integrand, a, b, tol);
    if (!std::isfinite(piece)) return {kInf, true};
    sum += piece;
    if (sum > cap) return {sum, true};
    if (sigma > -1 && chunk >= 2 && piece <= tol * sum) break;
    a = b;
    len *= 2.0;
  }
  return {sum, false};
}

}  // namespace

MetricSpec::MetricSpec(std::vector<MetricFactor> factors, QRational omega_hat)
    : factors_(std::move(factors)), omega_hat_(std::move(omega_hat)) {
  if (omega_hat_.is_zero()) throw Error(ErrorKind::domain_error, "omega_hat must not vanish identically");
  for (const auto& f : factors_)
    if (f.m < 0) throw Error(ErrorKind::domain_error, "factor exponents must be nonnegative");
}

int MetricSpec::total_m() const {
  int s = 0;
  for (const auto& f : factors_) s += f.m;
  return s;
}

double log_conformal_factor(const MetricSpec& spec, cplx z) {
  const cplx w = spec.omega_hat()(z);
  if (!finite(w)) return kInf;
  double acc = std::log(std::abs(w));
  for (const auto& f : spec.factors()) {
    if (f.m == 0) continue;
    const cplx g = f.g(z);
    if (!finite(g)) return kInf;
    acc += 0.5 * f.m * std::log1p(std::norm(g));
  }
  return acc;
}

double conformal_factor(const MetricSpec& spec, cplx z) { return std::exp(log_conformal_factor(spec, z)); }

int local_exponent(const MetricSpec& spec, const QPoint& b) {
  int sigma = order_at(spec.omega_hat(), b);
  if (b.is_infinity()) sigma -= 2;
  for (const auto& f : spec.factors()) {
    if (f.m == 0 || f.g.is_zero()) continue;
    sigma -= f.m * std::max(0, -order_at(f.g, b));
  }
  return sigma;
}

int boundary_exponent(const MetricSpec& spec, const Domain& d, const BoundaryPoint& b) {
  if (b.kind == BoundaryPoint::Kind::inner_circle || b.kind == BoundaryPoint::Kind::outer_circle)
    throw Error(ErrorKind::exponent_undefined,
                "annulus circles carry no symbolic exponent; use path_length as numeric witness");
  return local_exponent(spec, location(d, b));
}

CompletenessReport is_complete(const MetricSpec& spec, const PuncturedPlane& d) {
  CompletenessReport rep;
  const Domain dom = d;
  rep.overall = true;
  for (const auto& b : boundary_points(dom)) {
    BoundaryVerdict v;
    v.point = b;
    v.location = location(dom, b);
    v.sigma = boundary_exponent(spec, dom, b);
    v.complete = v.sigma <= -1;
    rep.overall = rep.overall && v.complete;
    rep.boundary.push_back(v);
  }
  rep.rationale =
      "lambda ~ C|t|^sigma in the chart t at each boundary point; the radial integral of t^sigma diverges iff "
      "sigma <= -1, and |dz| >= d|z-b| bounds every divergent path into b below by the radial integral. "
      "sigma = ord(omega_hat) - sum m_i max(0, pole order of g_i), minus 2 at infinity, because 1+|g|^2 >= 1 "
      "and only poles of g_i change the growth.";
  return rep;
}

PathLength path_length(const MetricSpec& spec, const Path& path, double tol, double cap) {
  if (path.vertices.empty()) throw Error(ErrorKind::invalid_path, "empty path");
  for (const cplx v : path.vertices)
    if (!finite(v)) throw Error(ErrorKind::invalid_path, "non-finite vertex");
  const auto cands = singular_candidates(spec);
  for (const cplx c : cands)
    if (std::abs(c - path.vertices.front()) <= 1e-12 * std::max(1.0, std::abs(c)) && is_singular(spec, c))
      throw Error(ErrorKind::invalid_path, "path starts at a pole of the metric");

  PathLength out;
  for (std::size_t i = 0; i + 1 < path.vertices.size(); ++i) {
    check_segment(spec, cands, path.vertices[i], path.vertices[i + 1], false);
    out.length += segment_length(spec, path.vertices[i], path.vertices[i + 1], tol);
  }
  if (!path.endpoint) return out;

  const QPoint& end = *path.endpoint;
  const cplx v = path.vertices.back();
  const int sigma = local_exponent(spec, end);
  out.endpoint_sigma = sigma;
  const LocalMetric lm(spec, end);
  TailResult tail{};
  if (end.is_finite()) {
    const cplx b = end.value().to_complex();
    const double dist = std::abs(v - b);
    if (dist == 0) throw Error(ErrorKind::invalid_path, "tail of zero length");
    check_segment(spec, cands, v, b, true);
    const cplx u = (v - b) / dist;
    out.length += segment_length(spec, v, b + 0.5 * dist * u, tol);
    tail = tail_length(lm, sigma, std::log(0.5 * dist), -1, b, u, tol, cap);
  } else {
    const double dabs = std::abs(path.direction);
    if (dabs == 0) throw Error(ErrorKind::invalid_path, "ray direction must be nonzero");
    const cplx u = path.direction / dabs;
    const double r0 = std::max(1.0, 4.0 * std::abs(v));
    for (const cplx c : cands) {
      // the ray v + r u, r >= 0
      const double t = ((c - v) * std::conj(u)).real();
      if (t >= 0 && std::abs(c - (v + t * u)) <= 1e-12 * std::max(1.0, std::abs(c)) && is_singular(spec, c))
        throw Error(ErrorKind::invalid_path, "ray passes through a pole of the metric");
    }
    out.length += segment_length(spec, v, v + r0 * u, tol);
    tail = tail_length(lm, sigma, std::log(r0), +1, v, u, tol, cap);
  }
  out.length += tail.length;
  out.diverged = sigma <= -1 && tail.hit_cap;
  return out;
}

double gauss_curvature_numeric(const MetricSpec& spec, cplx z, double h) {
  if (!(h > 0)) throw Error(ErrorKind::bad_stencil, "step must be positive");
  const double c = log_conformal_factor(spec, z);
  const double e = log_conformal_factor(spec, z + h);
  const double w = log_conformal_factor(spec, z - h);
  const double n = log_conformal_factor(spec, z + cplx(0, h));
  const double s = log_conformal_factor(spec, z - cplx(0, h));
  for (double v : {c, e, w, n, s})
    if (!std::isfinite(v)) throw Error(ErrorKind::bad_stencil, "stencil touches a pole or zero of the metric");
  const double lap = (e + w + n + s - 4.0 * c) / (h * h);
  return -lap * std::exp(-2.0 * c);
}

}  // namespace minsurf
