#include "minsurf/weierstrass.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <ostream>
#include <queue>
#include <sstream>

#include "minsurf/detail/parallel.hpp"
#include "minsurf/detail/quadrature.hpp"
#include "minsurf/parse.hpp"
#include "minsurf/roots.hpp"

namespace minsurf {
namespace {

const QComplex kHalf = QComplex::ratio(1, 2);
const QComplex kHalfI(mpq_class(0), mpq_class(1, 2));

// Removes every puncture root from p exactly.
QPoly strip_punctures(QPoly p, const std::vector<QComplex>& punctures) {
  for (const auto& a : punctures) p = strip_root(p, a);
  return p;
}

bool interior(const Domain& d, cplx z) { return contains(d, z, 0.0); }

struct Disk {
  cplx center;
  double radius;
};

bool segment_clear(cplx a, cplx b, const std::vector<Disk>& obstacles) {
  const cplx d = b - a;
  const double len2 = std::norm(d);
  for (const auto& o : obstacles) {
    double t = len2 > 0 ? ((o.center - a) * std::conj(d)).real() / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    if (std::abs(o.center - (a + t * d)) <= o.radius) return false;
  }
  return true;
}

std::array<cplx, 4> segment_integral(const CPhiForms& p, cplx a, cplx b, double tol) {
  std::array<cplx, 4> out{};
  const cplx d = b - a;
  if (d == cplx{}) return out;
  for (std::size_t k = 0; k < 4; ++k) {
    if (p[k].is_zero()) continue;
    out[k] = detail::integrate_complex([&](double t) { return p[k](a + t * d) * d; }, 0.0, 1.0, tol);
  }
  return out;
}

// Poles of the phi_i enclosed by a circle of radius r about 0, with the summed
// residues of each form.
std::pair<std::vector<cplx>, std::array<cplx, 4>> enclosed_poles(const PhiForms& p, double r) {
  std::vector<cplx> poles;
  std::array<cplx, 4> sum{};
  for (std::size_t k = 0; k < 4; ++k) {
    if (p[k].is_zero() || p[k].den().degree() <= 0) continue;
    const CRational approx = p[k].approx();
    for (const auto& root : roots(p[k].den())) {
      if (std::abs(root.value) >= r) continue;
      poles.push_back(root.value);
      sum[k] += residue_at(approx, CPoint(root.value), 1e-7);
    }
  }
  return {poles, sum};
}

std::string hex64(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace

WeierstrassData::WeierstrassData(QRational g1_, QRational g2_, QRational omega_hat_)
    : g1(std::move(g1_)), g2(std::move(g2_)), omega_hat(std::move(omega_hat_)) {
  if (omega_hat.is_zero()) throw Error(ErrorKind::domain_error, "omega_hat must not vanish identically");
}

PhiForms phis_from_data(const WeierstrassData& w) {
  const QRational one(QComplex(1));
  const QRational prod = w.g1 * w.g2;
  return PhiForms({
      QRational(kHalf) * (one + prod) * w.omega_hat,
      QRational(kHalfI) * (one - prod) * w.omega_hat,
      QRational(kHalf) * (w.g1 - w.g2) * w.omega_hat,
      QRational(-kHalfI) * (w.g1 + w.g2) * w.omega_hat,
  });
}

WeierstrassData data_from_phis(const PhiForms& p) {
  const QRational i(QComplex::i());
  const QRational omega = p[0] - i * p[1];
  if (omega.is_zero()) throw Error(ErrorKind::degenerate_frame, "phi_1 - i phi_2 vanishes identically");
  return WeierstrassData((p[2] + i * p[3]) / omega, -(p[2] - i * p[3]) / omega, omega);
}

bool check_conformality(const PhiForms& p) {
  // prod den_j^2 * sum phi_i^2 is a polynomial of degree <= bound; it is zero
  // iff it vanishes at bound + 1 distinct points off the poles.
  int bound = 0;
  int den_total = 0;
  for (const auto& f : p.phi) den_total += 2 * f.den().degree();
  for (const auto& f : p.phi)
    if (!f.is_zero()) bound = std::max(bound, den_total - 2 * f.den().degree() + 2 * f.num().degree());
  int checked = 0;
  for (long k = 0; checked <= bound; ++k) {
    const QComplex z(k);
    QComplex sum;
    bool pole = false;
    for (const auto& f : p.phi) {
      const QComplex d = f.den()(z);
      if (d.is_zero()) {
        pole = true;
        break;
      }
      const QComplex v = f.num()(z) / d;
      sum += v * v;
    }
    if (pole) continue;
    if (!sum.is_zero()) return false;
    ++checked;
  }
  return true;
}

bool check_conformality(const CPhiForms&) {
  throw Error(ErrorKind::requires_exact_mode, "conformality is an exact identity test");
}

RegularityReport check_regularity(const PhiForms& p, const Domain& d) {
  RegularityReport rep;
  const auto& punct = punctures_of(d);
  QPoly common;
  for (const auto& f : p.phi)
    if (!f.is_zero()) common = common.is_zero() ? f.num() : gcd(common, f.num());
  common = strip_punctures(common, punct);
  if (common.degree() > 0)
    for (const auto& r : roots(common))
      if (interior(d, r.value)) rep.offending.push_back({r.value, "common-zero"});

  std::vector<cplx> poles;
  for (const auto& f : p.phi) {
    const QPoly den = strip_punctures(f.den(), punct);
    if (den.degree() <= 0) continue;
    for (const auto& r : roots(den)) {
      if (!interior(d, r.value)) continue;
      const bool seen = std::any_of(poles.begin(), poles.end(), [&](cplx q) {
        return std::abs(q - r.value) <= 1e-8 * std::max(1.0, std::abs(q));
      });
      if (!seen) poles.push_back(r.value);
    }
  }
  for (const cplx z : poles) rep.offending.push_back({z, "pole"});
  rep.regular = rep.offending.empty();
  return rep;
}

MetricSpec induced_metric(const WeierstrassData& w) { return MetricSpec({{w.g1, 1}, {w.g2, 1}}, w.omega_hat); }

double induced_metric_identity(const PhiForms& p, std::span<const cplx> samples) {
  const WeierstrassData w = data_from_phis(p);
  const auto g1 = w.g1.approx(), g2 = w.g2.approx(), om = w.omega_hat.approx();
  const auto cp = std::array{p[0].approx(), p[1].approx(), p[2].approx(), p[3].approx()};
  double worst = 0.0;
  for (const cplx z : samples) {
    double lhs = 0;
    for (const auto& f : cp) lhs += std::norm(f(z));
    lhs *= 2.0;
    const double rhs = (1.0 + std::norm(g1(z))) * (1.0 + std::norm(g2(z))) * std::norm(om(z));
    const double scale = std::max(std::abs(rhs), std::numeric_limits<double>::min());
    worst = std::max(worst, std::abs(lhs - rhs) / scale);
  }
  return worst;
}

PeriodReport period_residues(const PhiForms& p, const Domain& d) {
  PeriodReport rep;
  for (const auto& a : punctures_of(d)) {
    PeriodEntry e{"puncture", a.to_complex(), {}, true};
    for (std::size_t k = 0; k < 4; ++k) {
      const QComplex r = residue_at(p[k], QPoint(a));
      e.residue[k] = r.to_complex();
      if (!r.is_real()) rep.well_defined = false;
    }
    rep.entries.push_back(e);
  }
  if (const auto* ann = std::get_if<Annulus>(&d)) {
    const auto [poles, sum] = enclosed_poles(p, ann->inner());
    PeriodEntry e{"core", cplx{}, sum, false};
    for (const cplx r : sum)
      if (std::abs(r.imag()) > kResidueTol * std::max(1.0, std::abs(r))) rep.well_defined = false;
    rep.entries.push_back(e);
  }
  return rep;
}

std::vector<Vec4> immerse(const PhiForms& p, const Domain& d, cplx base, std::span<const cplx> targets,
                          const ImmerseOptions& opt) {
  if (!period_residues(p, d).well_defined)
    throw Error(ErrorKind::multivalued_immersion, "a period of phi has nonzero real part");
  const double guard = 10.0 * opt.exclusion;
  std::vector<cplx> query{base};
  query.insert(query.end(), targets.begin(), targets.end());
  for (const cplx z : query)
    if (!contains(d, z, guard)) throw Error(ErrorKind::domain_error, "immersion point outside the domain");

  std::vector<Disk> obstacles;
  const auto& punct = punctures_of(d);
  for (std::size_t i = 0; i < punct.size(); ++i) {
    const cplx a = punct[i].to_complex();
    double rho = 1.0;
    for (std::size_t j = 0; j < punct.size(); ++j)
      if (j != i) rho = std::min(rho, 0.25 * std::abs(a - punct[j].to_complex()));
    for (const cplx z : query) rho = std::min(rho, 0.25 * std::abs(z - a));
    obstacles.push_back({a, std::max(rho, guard)});
  }
  if (const auto* ann = std::get_if<Annulus>(&d)) {
    const auto poles = enclosed_poles(p, ann->inner()).first;
    if (!poles.empty()) {
      double reach = 0;
      for (const cplx z : poles) reach = std::max(reach, std::abs(z));
      obstacles.push_back({cplx{}, 0.5 * (reach + ann->inner())});
    }
  }

  // visibility graph: query points plus eight nodes around each obstacle
  std::vector<cplx> nodes = query;
  for (const auto& o : obstacles)
    for (int k = 0; k < 8; ++k) {
      const cplx z = o.center + std::polar(1.5 * o.radius, (k + 0.5) * std::numbers::pi / 4.0);
      const bool inside = std::any_of(obstacles.begin(), obstacles.end(), [&](const Disk& q) {
        return std::abs(z - q.center) <= q.radius;
      });
      if (inside) continue;
      if (const auto* ann = std::get_if<Annulus>(&d); ann && std::abs(z) >= ann->R()) continue;
      nodes.push_back(z);
    }

  const std::size_t n = nodes.size();
  std::vector<double> dist(n, std::numeric_limits<double>::infinity());
  std::vector<std::size_t> parent(n, n);
  std::vector<char> done(n, 0);
  std::vector<std::size_t> order;
  dist[0] = 0;
  using Item = std::pair<double, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  heap.push({0.0, 0});
  while (!heap.empty()) {
    const auto [du, u] = heap.top();
    heap.pop();
    if (done[u]) continue;
    done[u] = 1;
    order.push_back(u);
    for (std::size_t v = 0; v < n; ++v) {
      if (done[v]) continue;
      const double w = std::abs(nodes[v] - nodes[u]);
      if (du + w < dist[v] && segment_clear(nodes[u], nodes[v], obstacles)) {
        dist[v] = du + w;
        parent[v] = u;
        heap.push({dist[v], v});
      }
    }
  }
  for (std::size_t i = 1; i < query.size(); ++i)
    if (!done[i]) throw Error(ErrorKind::invalid_path, "no puncture-avoiding path to a target");

  const CPhiForms cp({p[0].approx(), p[1].approx(), p[2].approx(), p[3].approx()});
  std::vector<std::array<cplx, 4>> edge(n);
  detail::parallel_for(n, [&](std::size_t v) {
    if (v != 0 && done[v]) edge[v] = segment_integral(cp, nodes[parent[v]], nodes[v], opt.tol);
  });
  std::vector<std::array<cplx, 4>> acc(n);
  for (const std::size_t v : order) {
    if (v == 0) continue;
    for (std::size_t k = 0; k < 4; ++k) acc[v][k] = acc[parent[v]][k] + edge[v][k];
  }
  std::vector<Vec4> out;
  out.reserve(targets.size());
  for (std::size_t i = 1; i < query.size(); ++i)
    out.push_back({acc[i][0].real(), acc[i][1].real(), acc[i][2].real(), acc[i][3].real()});
  return out;
}

Vec4 loop_period(const PhiForms& p, cplx center, double radius, int nodes) {
  if (nodes < 3 || !(radius > 0)) throw Error(ErrorKind::domain_error, "loop needs radius > 0 and >= 3 nodes");
  const CPhiForms cp({p[0].approx(), p[1].approx(), p[2].approx(), p[3].approx()});
  std::array<cplx, 4> sum{};
  const double h = 2.0 * std::numbers::pi / nodes;
  for (int j = 0; j < nodes; ++j) {
    const cplx e = std::polar(1.0, j * h);
    const cplx z = center + radius * e;
    const cplx dz = cplx(0, radius) * e * h;
    for (std::size_t k = 0; k < 4; ++k) sum[k] += cp[k](z) * dz;
  }
  return {sum[0].real(), sum[1].real(), sum[2].real(), sum[3].real()};
}

Grid make_grid(const Domain& d, const GridParams& grid) {
  if (grid.n < 2 || grid.sectors < 3) throw Error(ErrorKind::domain_error, "grid needs n >= 2 and sectors >= 3");
  Grid g;
  auto& pts = g.points;
  auto add_wrapped = [&](std::size_t offset, int rings, int sectors) {
    for (int k = 0; k + 1 < rings; ++k)
      for (int s = 0; s < sectors; ++s) {
        const int s1 = (s + 1) % sectors;
        const int a = static_cast<int>(offset) + k * sectors + s, b = static_cast<int>(offset) + k * sectors + s1;
        const int c = a + sectors, e = b + sectors;
        g.faces.push_back({a, c, e});
        g.faces.push_back({a, e, b});
      }
  };

  const auto& punct = punctures_of(d);
  if (const auto* ann = std::get_if<Annulus>(&d)) {
    const double lr = std::log(ann->R()) * (1.0 - 1e-6);
    for (int k = 0; k < grid.n; ++k) {
      const double r = std::exp(-lr + 2.0 * lr * k / (grid.n - 1));
      for (int s = 0; s < grid.sectors; ++s) pts.push_back(std::polar(r, 2.0 * std::numbers::pi * s / grid.sectors));
    }
    add_wrapped(0, grid.n, grid.sectors);
  } else if (punct.empty()) {
    const double h = 2.0 * grid.extent / (grid.n - 1);
    for (int i = 0; i < grid.n; ++i)
      for (int j = 0; j < grid.n; ++j) pts.push_back({-grid.extent + j * h, -grid.extent + i * h});
    for (int i = 0; i + 1 < grid.n; ++i)
      for (int j = 0; j + 1 < grid.n; ++j) {
        const int a = i * grid.n + j, b = a + 1, c = a + grid.n, e = c + 1;
        g.faces.push_back({a, b, e});
        g.faces.push_back({a, e, c});
      }
  } else {
    for (std::size_t i = 0; i < punct.size(); ++i) {
      const cplx a = punct[i].to_complex();
      double outer = grid.extent;
      for (std::size_t j = 0; j < punct.size(); ++j)
        if (j != i) outer = std::min(outer, 0.45 * std::abs(a - punct[j].to_complex()));
      const double inner = std::max(100.0 * grid.exclusion, 1e-2 * outer);
      const std::size_t offset = pts.size();
      for (int k = 0; k < grid.n; ++k) {
        const double r = outer * std::pow(inner / outer, static_cast<double>(k) / (grid.n - 1));
        for (int s = 0; s < grid.sectors; ++s)
          pts.push_back(a + std::polar(r, 2.0 * std::numbers::pi * s / grid.sectors));
      }
      add_wrapped(offset, grid.n, grid.sectors);
    }
  }
  return g;
}

Mesh mesh_from_values(const Grid& grid, const std::vector<Vec4>& values, std::string source_hash) {
  Mesh mesh;
  mesh.source_hash = std::move(source_hash);
  std::vector<int> remap(grid.points.size(), -1);
  for (std::size_t i = 0; i < grid.points.size(); ++i) {
    const bool ok = std::all_of(values[i].begin(), values[i].end(), [](double v) { return std::isfinite(v); });
    if (!ok) {
      std::ostringstream w;
      w << "skipped vertex at (" << grid.points[i].real() << ", " << grid.points[i].imag() << "): pole";
      mesh.warnings.push_back(w.str());
      continue;
    }
    remap[i] = static_cast<int>(mesh.vertices.size());
    mesh.vertices.push_back(values[i]);
  }
  for (const auto& f : grid.faces) {
    const std::array<int, 3> g{remap[f[0]], remap[f[1]], remap[f[2]]};
    if (g[0] >= 0 && g[1] >= 0 && g[2] >= 0) mesh.faces.push_back(g);
  }
  return mesh;
}

std::string describe(const Domain& d, const GridParams& grid) {
  std::ostringstream src;
  if (const auto* ann = std::get_if<Annulus>(&d)) src << "annulus " << ann->R() << '\n';
  for (const auto& a : punctures_of(d)) src << a.str() << '\n';
  src << grid.n << ' ' << grid.sectors << ' ' << grid.extent << ' ' << grid.exclusion << ' ' << grid.tol;
  return src.str();
}

std::string source_hash(std::string_view data) { return hex64(detail::fnv1a(data)); }

Mesh export_mesh(const PhiForms& p, const Domain& d, const GridParams& grid) {
  const auto reg = check_regularity(p, d);
  if (!reg.regular) throw Error(ErrorKind::domain_error, "export refused: data is not regular in the domain");
  if (!period_residues(p, d).well_defined)
    throw Error(ErrorKind::multivalued_immersion, "export refused: immersion is multivalued");
  const Grid g = make_grid(d, grid);
  std::vector<Vec4> xs = immerse(p, d, g.points.front(), std::span<const cplx>(g.points).subspan(1),
                                 ImmerseOptions{grid.tol, grid.exclusion});
  xs.insert(xs.begin(), Vec4{0, 0, 0, 0});
  std::string src;
  for (const auto& f : p.phi) src += format(f) + '\n';
  return mesh_from_values(g, xs, source_hash(src + describe(d, grid)));
}

void write_mesh(std::ostream& os, const Mesh& mesh) {
  char buf[128];
  os << "# minsurf mesh\n";
  os << "# source " << mesh.source_hash << '\n';
  os << "# vertices " << mesh.vertices.size() << " faces " << mesh.faces.size() << '\n';
  for (const auto& n : mesh.notes) os << "# meta " << n << '\n';
  for (const auto& w : mesh.warnings) os << "# warning " << w << '\n';
  for (const auto& v : mesh.vertices) {
    std::snprintf(buf, sizeof buf, "v %.12e %.12e %.12e\n", v[0], v[1], v[2]);
    os << buf;
    std::snprintf(buf, sizeof buf, "#x4 %.12e\nvp %.12e\n", v[3], v[3]);
    os << buf;
  }
  for (const auto& f : mesh.faces) os << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1 << '\n';
}

std::string mesh_to_string(const Mesh& mesh) {
  std::ostringstream os;
  write_mesh(os, mesh);
  return os.str();
}

}  // namespace minsurf
