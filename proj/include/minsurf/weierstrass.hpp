#pragma once

#include <array>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "minsurf/domains.hpp"
#include "minsurf/metric.hpp"
#include "minsurf/rational.hpp"

namespace minsurf {

/// (g1, g2, omega = omega_hat dz).
struct WeierstrassData {
  WeierstrassData(QRational g1, QRational g2, QRational omega_hat);

  QRational g1;
  QRational g2;
  QRational omega_hat;
};

/// The coefficients of dz of phi_1..phi_4.
template <class S>
struct BasicPhiForms {
  std::array<RationalFunction<S>, 4> phi;

  explicit BasicPhiForms(std::array<RationalFunction<S>, 4> p) : phi(std::move(p)) {
    if (phi[0].is_zero() && phi[1].is_zero() && phi[2].is_zero() && phi[3].is_zero())
      throw Error(ErrorKind::domain_error, "all four forms vanish");
  }
  const RationalFunction<S>& operator[](std::size_t i) const { return phi[i]; }
};

using PhiForms = BasicPhiForms<QComplex>;
using CPhiForms = BasicPhiForms<cplx>;

using Vec4 = std::array<double, 4>;

PhiForms phis_from_data(const WeierstrassData& w);
/// Throws degenerate_frame when phi_1 - i phi_2 vanishes identically.
WeierstrassData data_from_phis(const PhiForms& p);

/// Exact test of phi_1^2 + ... + phi_4^2 == 0.
bool check_conformality(const PhiForms& p);
/// Throws requires_exact_mode.
bool check_conformality(const CPhiForms& p);

struct Singularity {
  cplx point;
  std::string reason;  // "common-zero" or "pole"
};

struct RegularityReport {
  bool regular = true;
  std::vector<Singularity> offending;
};

/// Common zeros of the phi_i inside d, plus interior poles (points where the
/// immersion would not be defined).
RegularityReport check_regularity(const PhiForms& p, const Domain& d);

/// The metric (1 + |g1|^2)(1 + |g2|^2)|omega_hat|^2 as a MetricSpec.
MetricSpec induced_metric(const WeierstrassData& w);

/// Worst relative error of 2 sum |phi_i|^2 = (1+|g1|^2)(1+|g2|^2)|omega_hat|^2.
double induced_metric_identity(const PhiForms& p, std::span<const cplx> samples);

struct PeriodEntry {
  std::string label;  // "puncture" or "core"
  cplx point;
  std::array<cplx, 4> residue;
  bool exact = false;
};

struct PeriodReport {
  std::vector<PeriodEntry> entries;
  bool well_defined = true;
};

inline constexpr double kResidueTol = 1e-12;

/// Residues at each puncture; on an annulus also the summed residues of the
/// poles enclosed by the inner circle (the period of the core loop over 2 pi i).
/// Re of the period 2 pi i Res vanishes iff Res is real.
PeriodReport period_residues(const PhiForms& p, const Domain& d);

struct ImmerseOptions {
  double tol = 1e-10;
  double exclusion = 1e-6;
};

/// X(z) = Re of the integral of phi from base to each target along polylines
/// that keep away from the punctures (and from the hole of an annulus).
/// Throws multivalued_immersion unless period_residues is well defined.
std::vector<Vec4> immerse(const PhiForms& p, const Domain& d, cplx base, std::span<const cplx> targets,
                          const ImmerseOptions& opt = {});

/// Re of the loop integral of phi over |z - center| = radius (trapezoid rule).
Vec4 loop_period(const PhiForms& p, cplx center, double radius, int nodes = 512);

struct GridParams {
  int n = 10;              // rectangular: n x n; polar and annular: rings
  int sectors = 24;        // polar and annular patches
  double extent = 2.0;     // half-width of the rectangle or outer patch radius
  double exclusion = 1e-6;
  double tol = 1e-10;
};

struct Mesh {
  std::vector<Vec4> vertices;
  std::vector<std::array<int, 3>> faces;  // 0-based
  std::string source_hash;
  std::vector<std::string> notes;  // written as "# meta" lines
  std::vector<std::string> warnings;
};

struct Grid {
  std::vector<cplx> points;
  std::vector<std::array<int, 3>> faces;
};

/// Rectangular n x n grid for the unpunctured plane, polar patches around
/// the punctures otherwise, annular grid on annuli.
Grid make_grid(const Domain& d, const GridParams& grid);
/// Drops vertices with non-finite values (with a warning) and the faces
/// touching them.
Mesh mesh_from_values(const Grid& grid, const std::vector<Vec4>& values, std::string source_hash);
/// Text fingerprint of a domain and grid, and FNV-1a hex digest of any text.
std::string describe(const Domain& d, const GridParams& grid);
std::string source_hash(std::string_view data);

/// Rectangular grid for the unpunctured plane, polar patches around the
/// punctures otherwise, annular grid on annuli. Refuses irregular or
/// multivalued data.
Mesh export_mesh(const PhiForms& p, const Domain& d, const GridParams& grid);
/// ASCII Wavefront-style text: xyz on `v` lines, the fourth coordinate in a
/// `#x4` comment and a `vp` attribute line, 1-based faces.
void write_mesh(std::ostream& os, const Mesh& mesh);
std::string mesh_to_string(const Mesh& mesh);

}  // namespace minsurf
