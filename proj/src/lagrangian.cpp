#include "minsurf/lagrangian.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

#include "minsurf/parse.hpp"
#include "minsurf/roots.hpp"

namespace minsurf {
namespace {

std::vector<cplx> interior_roots(QPoly p, const Domain& d) {
  for (const auto& a : punctures_of(d)) p = strip_root(p, a);
  std::vector<cplx> out;
  if (p.degree() <= 0) return out;
  for (const auto& r : roots(p))
    if (contains(d, r.value)) out.push_back(r.value);
  return out;
}

std::array<cplx, 2> corrupted(const LagrangianSpec& spec, cplx z, Corruption c) {
  auto f = immersion_f(spec, z);
  switch (c) {
    case Corruption::none: break;
    case Corruption::drop_phase_second: f[1] *= std::polar(1.0, -spec.beta / 2.0); break;
    case Corruption::conjugate_second: f[1] = std::conj(f[1]); break;
  }
  return f;
}

}  // namespace

std::vector<cplx> interior_poles(const HolomorphicPair& F, const Domain& d) {
  auto out = interior_roots(F.F1.den(), d);
  const auto more = interior_roots(F.F2.den(), d);
  out.insert(out.end(), more.begin(), more.end());
  return out;
}

Spinors spinors(const HolomorphicPair& F) { return {F.F2.derivative(), -F.F1.derivative()}; }

LagrangianSpec::LagrangianSpec(HolomorphicPair p, double b) : pair(std::move(p)), beta(b), s(spinors(pair)) {
  if (!std::isfinite(beta)) throw Error(ErrorKind::domain_error, "beta must be finite");
  // e^{i beta/2} changes sign under beta -> beta + 2 pi, so fix the representative
  beta = std::fmod(beta, 2 * std::numbers::pi);
  if (beta < 0) beta += 2 * std::numbers::pi;
  if (s.S1.is_zero() && s.S2.is_zero())
    throw Error(ErrorKind::degenerate, "S1 and S2 vanish identically (F is constant)");
}

NondegeneracyReport nondegenerate(const HolomorphicPair& F, const Domain& d) {
  NondegeneracyReport rep;
  const Spinors s = spinors(F);
  if (s.S1.is_zero() && s.S2.is_zero()) {
    rep.nondegenerate = false;
    rep.identically_degenerate = true;
    return rep;
  }
  QPoly common;
  if (s.S1.is_zero()) common = s.S2.num();
  else if (s.S2.is_zero()) common = s.S1.num();
  else common = gcd(s.S1.num(), s.S2.num());
  rep.offending = interior_roots(common, d);
  rep.nondegenerate = rep.offending.empty();
  return rep;
}

std::array<cplx, 2> immersion_f(const LagrangianSpec& spec, cplx z) {
  const cplx F1 = spec.pair.F1(z);
  const cplx F2 = spec.pair.F2(z);
  const cplx c = std::polar(1.0 / std::numbers::sqrt2, spec.beta / 2.0);
  const cplx i(0, 1);
  return {c * (F1 - i * std::conj(F2)), c * (F2 + i * std::conj(F1))};
}

Vec4 to_real(const std::array<cplx, 2>& f) { return {f[0].real(), f[0].imag(), f[1].real(), f[1].imag()}; }

MetricCurvature metric_curvature(const LagrangianSpec& spec, cplx z) {
  const cplx s1 = spec.s.S1(z), s2 = spec.s.S2(z);
  const cplx d1 = spec.s.S1.derivative()(z), d2 = spec.s.S2.derivative()(z);
  MetricCurvature out;
  out.lambda2 = std::norm(s1) + std::norm(s2);
  if (!(out.lambda2 > 0) || !std::isfinite(out.lambda2))
    throw Error(ErrorKind::degenerate, "|S1|^2 + |S2|^2 vanishes or is undefined here");
  const double w = std::abs(s1 * d2 - s2 * d1);
  const double cube = out.lambda2 * out.lambda2 * out.lambda2;
  out.K = -2.0 * w * w / cube;
  out.K_printed = -2.0 * w / cube;
  return out;
}

MinimalityResiduals lagrangian_minimality_check(const LagrangianSpec& spec, cplx z, double h, Corruption corrupt) {
  if (!(h > 0)) throw Error(ErrorKind::bad_stencil, "step must be positive");
  const auto c = corrupted(spec, z, corrupt);
  const auto e = corrupted(spec, z + h, corrupt);
  const auto w = corrupted(spec, z - h, corrupt);
  const auto n = corrupted(spec, z + cplx(0, h), corrupt);
  const auto s = corrupted(spec, z - cplx(0, h), corrupt);
  for (const auto& v : {c, e, w, n, s})
    for (const cplx x : v)
      if (!std::isfinite(x.real()) || !std::isfinite(x.imag()))
        throw Error(ErrorKind::bad_stencil, "stencil touches a pole");

  std::array<cplx, 2> fu, fv;
  for (int k = 0; k < 2; ++k) {
    fu[k] = (e[k] - w[k]) / (2.0 * h);
    fv[k] = (n[k] - s[k]) / (2.0 * h);
  }
  const double lambda2 = std::norm(spec.s.S1(z)) + std::norm(spec.s.S2(z));
  if (!(lambda2 > 0)) throw Error(ErrorKind::bad_stencil, "metric degenerates at the stencil center");

  MinimalityResiduals r;
  const cplx herm = std::conj(fu[0]) * fv[0] + std::conj(fu[1]) * fv[1];
  r.symplectic = std::abs(herm.imag()) / lambda2;
  r.conformal = (std::abs(std::norm(fu[0]) + std::norm(fu[1]) - std::norm(fv[0]) - std::norm(fv[1])) +
                 2.0 * std::abs(herm.real())) /
                lambda2;
  const cplx omega = fu[0] * fv[1] - fu[1] * fv[0];
  r.angle = std::abs(omega) > 0 ? std::abs(omega / std::abs(omega) - std::polar(1.0, spec.beta)) : 2.0;
  for (int k = 0; k < 2; ++k) {
    const cplx lap = (e[k] + w[k] + n[k] + s[k] - 4.0 * c[k]) / (h * h);
    r.harmonic = std::max({r.harmonic, std::abs(lap.real()), std::abs(lap.imag())});
  }
  return r;
}

CorollaryReport corollary_bound_check(const QRational& g, const QRational& omega_hat, const PuncturedPlane& d) {
  CorollaryReport rep;
  rep.g = g;
  if (g.is_constant()) {
    rep.note = "g is constant: Lagrangian plane";
    return rep;
  }
  rep.applicable = true;
  rep.complete = is_complete(MetricSpec({{g, 1}}, omega_hat), d).overall;
  rep.q = static_cast<int>(exceptional_values(g, d).size());
  if (!rep.complete) {
    rep.verdict = Verdict::hypothesis_failed;
    rep.note = "metric (1 + |g|^2)|omega|^2 is not complete";
    return rep;
  }
  rep.holds = *rep.q <= 3;
  rep.verdict = !rep.holds ? Verdict::counterexample : *rep.q == 3 ? Verdict::equality : Verdict::holds;
  return rep;
}

CorollaryReport corollary_bound_check(const LagrangianSpec& spec, const PuncturedPlane& d) {
  CorollaryReport rep;
  if (spec.s.S1.is_zero()) {
    rep.note = "S1 vanishes identically: g is the constant infinity, Lagrangian plane";
  } else {
    rep = corollary_bound_check(-spec.s.S2 / spec.s.S1, spec.s.S1, d);
  }
  rep.second_component = std::polar(1.0, spec.beta);
  return rep;
}

Mesh lagrangian_mesh(const LagrangianSpec& spec, const Domain& d, const GridParams& grid) {
  const Grid g = make_grid(d, grid);
  std::vector<Vec4> values;
  values.reserve(g.points.size());
  for (const cplx z : g.points) values.push_back(to_real(immersion_f(spec, z)));
  char beta[64];
  std::snprintf(beta, sizeof beta, "%.17g", spec.beta);
  const std::string src =
      "lagrangian\n" + format(spec.pair.F1) + '\n' + format(spec.pair.F2) + '\n' + beta + '\n' + describe(d, grid);
  return mesh_from_values(g, values, source_hash(src));
}

}  // namespace minsurf
