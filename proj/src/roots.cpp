#include "minsurf/roots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "minsurf/errors.hpp"

namespace minsurf {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Eval {
  cplx p, dp;
  double bound;  // sum |c_k| |z|^k, for the backward-error stopping rule
};

Eval horner(const std::vector<cplx>& c, cplx z) {
  cplx p = 0, dp = 0;
  double bound = 0;
  const double az = std::abs(z);
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    dp = dp * z + p;
    p = p * z + *it;
    bound = bound * az + std::abs(*it);
  }
  return {p, dp, bound};
}

// Simultaneous Aberth-Ehrlich iteration on a polynomial with c[0] != 0.
std::vector<cplx> aberth(const std::vector<cplx>& c) {
  const int n = static_cast<int>(c.size()) - 1;
  if (n == 1) return {-c[0] / c[1]};

  // Seeds on a circle of radius |c0/cn|^(1/n), the geometric mean of the root
  // moduli; a fixed angular offset avoids symmetric stalls.
  const double radius = std::pow(std::abs(c[0]) / std::abs(c[static_cast<std::size_t>(n)]), 1.0 / n);
  std::vector<cplx> z(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k)
    z[static_cast<std::size_t>(k)] = std::polar(radius, 2.0 * std::numbers::pi * k / n + 0.4);

  std::vector<bool> done(static_cast<std::size_t>(n), false);
  for (int iter = 0; iter < 2000; ++iter) {
    bool all_done = true;
    for (int k = 0; k < n; ++k) {
      const auto ku = static_cast<std::size_t>(k);
      if (done[ku]) continue;
      const Eval e = horner(c, z[ku]);
      if (std::abs(e.p) <= 4.0 * kEps * e.bound) {
        done[ku] = true;
        continue;
      }
      all_done = false;
      const cplx ratio = e.p / e.dp;
      cplx sum = 0;
      for (int j = 0; j < n; ++j)
        if (j != k) sum += 1.0 / (z[ku] - z[static_cast<std::size_t>(j)]);
      const cplx w = ratio / (1.0 - ratio * sum);
      if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) continue;
      z[ku] -= w;
      if (std::abs(w) <= kEps * std::abs(z[ku])) done[ku] = true;
    }
    if (all_done) break;
  }
  return z;
}

std::vector<Root> cluster(std::vector<Root> rs, double tol) {
  std::sort(rs.begin(), rs.end(), [](const Root& a, const Root& b) {
    return a.value.real() != b.value.real() ? a.value.real() < b.value.real() : a.value.imag() < b.value.imag();
  });
  const std::size_t n = rs.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&parent](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double scale = std::max({1.0, std::abs(rs[i].value), std::abs(rs[j].value)});
      if (std::abs(rs[i].value - rs[j].value) <= tol * scale) parent[find(j)] = find(i);
    }
  std::vector<Root> out;
  std::vector<std::size_t> slot(n, n);
  std::vector<cplx> sum;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = find(i);
    if (slot[r] == n) {
      slot[r] = out.size();
      out.push_back({cplx(0), 0});
      sum.push_back(0);
    }
    Root& o = out[slot[r]];
    sum[slot[r]] += rs[i].value * static_cast<double>(rs[i].multiplicity);
    o.multiplicity += rs[i].multiplicity;
  }
  for (std::size_t i = 0; i < out.size(); ++i) out[i].value = sum[i] / static_cast<double>(out[i].multiplicity);
  return out;
}

}  // namespace

std::vector<Root> roots(const CPoly& p, double tol) {
  if (p.is_zero()) throw Error(ErrorKind::domain_error, "roots of the zero polynomial");
  for (const auto& c : p.coeffs())
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
      throw Error(ErrorKind::domain_error, "non-finite polynomial coefficient");
  std::vector<Root> out;
  const int zeros = p.valuation();
  if (zeros > 0) out.push_back({cplx(0), zeros});
  const CPoly q = p.shift_down(zeros);
  if (q.degree() >= 1)
    for (const auto& z : aberth(q.coeffs())) out.push_back({z, 1});
  return cluster(std::move(out), tol);
}

std::vector<QPoly> squarefree_decomposition(const QPoly& p) {
  if (p.is_zero()) throw Error(ErrorKind::domain_error, "square-free decomposition of zero");
  std::vector<QPoly> out;
  if (p.degree() == 0) return out;
  const QPoly dp = p.derivative();
  QPoly a = gcd(p, dp);
  QPoly b = exact_div(p, a);
  QPoly c = exact_div(dp, a);
  QPoly d = c - b.derivative();
  while (b.degree() > 0) {
    QPoly f = gcd(b, d);
    b = exact_div(b, f);
    c = exact_div(d, f);
    d = c - b.derivative();
    out.push_back(f.monic());
  }
  return out;
}

std::vector<Root> roots(const QPoly& p, double tol) {
  if (p.is_zero()) throw Error(ErrorKind::domain_error, "roots of the zero polynomial");
  std::vector<Root> out;
  const auto factors = squarefree_decomposition(p);
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (factors[i].degree() <= 0) continue;
    const int mult = static_cast<int>(i) + 1;
    for (const auto& r : roots(approx(factors[i]), tol)) out.push_back({r.value, r.multiplicity * mult});
  }
  return out;
}

}  // namespace minsurf
