#pragma once

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <complex>

namespace minsurf::detail {

/// Adaptive 31-point Gauss-Kronrod on [a, b], relative tolerance tol.
template <class F>
double integrate(F&& f, double a, double b, double tol) {
  using boost::math::quadrature::gauss_kronrod;
  return gauss_kronrod<double, 31>::integrate(f, a, b, 20, tol);
}

template <class F>
std::complex<double> integrate_complex(F&& f, double a, double b, double tol) {
  const double re = integrate([&f](double t) { return f(t).real(); }, a, b, tol);
  const double im = integrate([&f](double t) { return f(t).imag(); }, a, b, tol);
  return {re, im};
}

}  // namespace minsurf::detail
