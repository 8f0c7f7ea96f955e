#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "minsurf/qcomplex.hpp"
#include "minsurf/roots.hpp"
#include "minsurf/sphere.hpp"

namespace minsurf {

/// The plane with finitely many distinct punctures.
class PuncturedPlane {
 public:
  PuncturedPlane() = default;
  /// Punctures must be distinct beyond 10x the root-cluster tolerance.
  explicit PuncturedPlane(std::vector<QComplex> punctures, double cluster_tol = kDefaultClusterTol);

  const std::vector<QComplex>& punctures() const noexcept { return punctures_; }
  bool is_puncture(const QComplex& z) const;

 private:
  std::vector<QComplex> punctures_;
};

/// {1/R < |z| < R}, R > 1, optionally punctured inside.
class Annulus {
 public:
  explicit Annulus(double R, std::vector<QComplex> punctures = {}, double cluster_tol = kDefaultClusterTol);

  double R() const noexcept { return R_; }
  double inner() const noexcept { return 1.0 / R_; }
  const std::vector<QComplex>& punctures() const noexcept { return punctures_; }

 private:
  double R_;
  std::vector<QComplex> punctures_;
};

using Domain = std::variant<PuncturedPlane, Annulus>;

struct BoundaryPoint {
  enum class Kind { puncture, infinity, inner_circle, outer_circle };
  Kind kind = Kind::infinity;
  std::size_t index = 0;  // puncture index, when kind == puncture

  friend bool operator==(const BoundaryPoint&, const BoundaryPoint&) = default;
};

const char* to_string(BoundaryPoint::Kind kind) noexcept;

/// Ends of the domain a divergent path can run into: punctured plane ->
/// punctures and infinity; annulus -> punctures and both circles.
std::vector<BoundaryPoint> boundary_points(const Domain& d);

/// Sphere location of a puncture or infinity. Circles have none.
QPoint location(const Domain& d, const BoundaryPoint& b);

const std::vector<QComplex>& punctures_of(const Domain& d);

/// True if z lies in the domain at distance > exclusion from every puncture.
bool contains(const Domain& d, cplx z, double exclusion = 0.0);

/// At least n deterministic pseudo-random points of the domain, each farther
/// than exclusion_radius from every puncture. For the plane, points are drawn
/// from the square of half-width `extent` (default: max(2, 2 max|puncture|)).
std::vector<cplx> sample_grid(const Domain& d, std::size_t n, double exclusion_radius, std::uint64_t seed,
                              double extent = 0.0);

}  // namespace minsurf
