#include "minsurf/domains.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "minsurf/errors.hpp"

namespace minsurf {
namespace {

void check_distinct(const std::vector<QComplex>& pts, double cluster_tol) {
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      if (pts[i] == pts[j]) throw Error(ErrorKind::domain_error, "repeated puncture " + pts[i].str());
      const cplx a = pts[i].to_complex();
      const cplx b = pts[j].to_complex();
      const double scale = std::max({1.0, std::abs(a), std::abs(b)});
      if (std::abs(a - b) <= 10.0 * cluster_tol * scale)
        throw Error(ErrorKind::domain_error, "punctures " + pts[i].str() + " and " + pts[j].str() + " nearly coincide");
    }
}

}  // namespace

PuncturedPlane::PuncturedPlane(std::vector<QComplex> punctures, double cluster_tol)
    : punctures_(std::move(punctures)) {
  check_distinct(punctures_, cluster_tol);
}

bool PuncturedPlane::is_puncture(const QComplex& z) const {
  return std::find(punctures_.begin(), punctures_.end(), z) != punctures_.end();
}

Annulus::Annulus(double R, std::vector<QComplex> punctures, double cluster_tol)
    : R_(R), punctures_(std::move(punctures)) {
  if (!(R_ > 1.0) || !std::isfinite(R_)) throw Error(ErrorKind::domain_error, "annulus needs finite R > 1");
  check_distinct(punctures_, cluster_tol);
  for (const auto& p : punctures_) {
    const double r = std::abs(p.to_complex());
    if (!(r > 1.0 / R_ && r < R_)) throw Error(ErrorKind::domain_error, "puncture " + p.str() + " outside the annulus");
  }
}

const char* to_string(BoundaryPoint::Kind kind) noexcept {
  switch (kind) {
    case BoundaryPoint::Kind::puncture: return "puncture";
    case BoundaryPoint::Kind::infinity: return "infinity";
    case BoundaryPoint::Kind::inner_circle: return "inner_circle";
    case BoundaryPoint::Kind::outer_circle: return "outer_circle";
  }
  return "unknown";
}

const std::vector<QComplex>& punctures_of(const Domain& d) {
  return std::visit([](const auto& x) -> const std::vector<QComplex>& { return x.punctures(); }, d);
}

std::vector<BoundaryPoint> boundary_points(const Domain& d) {
  std::vector<BoundaryPoint> out;
  const auto& pts = punctures_of(d);
  for (std::size_t i = 0; i < pts.size(); ++i) out.push_back({BoundaryPoint::Kind::puncture, i});
  if (std::holds_alternative<PuncturedPlane>(d)) {
    out.push_back({BoundaryPoint::Kind::infinity, 0});
  } else {
    out.push_back({BoundaryPoint::Kind::inner_circle, 0});
    out.push_back({BoundaryPoint::Kind::outer_circle, 0});
  }
  return out;
}

QPoint location(const Domain& d, const BoundaryPoint& b) {
  switch (b.kind) {
    case BoundaryPoint::Kind::puncture: return QPoint(punctures_of(d).at(b.index));
    case BoundaryPoint::Kind::infinity: return QPoint::infinity();
    default: throw Error(ErrorKind::exponent_undefined, "annulus boundary circles have no point location");
  }
}

bool contains(const Domain& d, cplx z, double exclusion) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  if (const auto* a = std::get_if<Annulus>(&d)) {
    const double r = std::abs(z);
    if (!(r > a->inner() && r < a->R())) return false;
  }
  for (const auto& p : punctures_of(d))
    if (std::abs(z - p.to_complex()) <= exclusion) return false;
  return true;
}

std::vector<cplx> sample_grid(const Domain& d, std::size_t n, double exclusion_radius, std::uint64_t seed,
                              double extent) {
  if (n < 1) throw Error(ErrorKind::domain_error, "sample_grid needs n >= 1");
  if (!(exclusion_radius > 0)) throw Error(ErrorKind::domain_error, "exclusion radius must be positive");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto draw = [&]() -> cplx {
    if (const auto* a = std::get_if<Annulus>(&d)) {
      // log-uniform radius strictly inside the open annulus
      const double lr = std::log(a->R()) * (1.0 - 1e-9);
      const double r = std::exp(-lr + 2.0 * lr * unit(rng));
      return std::polar(r, 2.0 * std::numbers::pi * unit(rng));
    }
    double half = extent;
    if (half <= 0) {
      half = 2.0;
      for (const auto& p : punctures_of(d)) half = std::max(half, 2.0 * std::abs(p.to_complex()));
    }
    return {half * (2.0 * unit(rng) - 1.0), half * (2.0 * unit(rng) - 1.0)};
  };
  std::vector<cplx> out;
  out.reserve(n);
  const std::size_t max_attempts = 1000 * n + 1000;
  for (std::size_t attempt = 0; out.size() < n; ++attempt) {
    if (attempt >= max_attempts)
      throw Error(ErrorKind::infeasible_sampling, "domain too crowded for the requested exclusion radius");
    const cplx z = draw();
    if (contains(d, z, exclusion_radius)) out.push_back(z);
  }
  return out;
}

}  // namespace minsurf
