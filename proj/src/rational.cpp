#include "minsurf/rational.hpp"

#include <algorithm>
#include <cmath>

namespace minsurf {
namespace {

// Coefficient j of the power series a(w) / b(w), b(0) != 0.
template <class S>
S series_quotient_coeff(const Polynomial<S>& a, const Polynomial<S>& b, int j) {
  std::vector<S> q(static_cast<std::size_t>(j) + 1, S(0));
  const S inv = S(1) / b.coeff(0);
  for (int n = 0; n <= j; ++n) {
    S acc = a.coeff(n);
    for (int i = 1; i <= n; ++i) acc -= b.coeff(i) * q[static_cast<std::size_t>(n - i)];
    q[static_cast<std::size_t>(n)] = acc * inv;
  }
  return q.back();
}

// Valuation with coefficients below tol * max|c| treated as zero.
int approx_valuation(const CPoly& p, double tol) {
  double scale = 0;
  for (const auto& c : p.coeffs()) scale = std::max(scale, std::abs(c));
  int k = 0;
  while (k < p.degree() && std::abs(p.coeff(k)) <= tol * scale) ++k;
  return k;
}

CPoly drop_low(const CPoly& p, int k) { return p.shift_down(k); }

}  // namespace

QPoint eval_extended(const QRational& r, const QPoint& p) {
  if (p.is_infinity()) {
    const int dn = r.num().degree();
    const int dd = r.den().degree();
    if (r.is_zero() || dn < dd) return QPoint(QComplex(0));
    if (dn > dd) return QPoint::infinity();
    return QPoint(r.num().leading() / r.den().leading());
  }
  const QComplex d = r.den()(p.value());
  if (d.is_zero()) return QPoint::infinity();
  return QPoint(r.num()(p.value()) / d);
}

int order_at(const QRational& r, const QPoint& p) {
  if (r.is_zero()) throw Error(ErrorKind::domain_error, "order of the zero function");
  if (p.is_infinity()) return r.den().degree() - r.num().degree();
  return multiplicity_at(r.num(), p.value()) - multiplicity_at(r.den(), p.value());
}

int order_at(const CRational& r, const CPoint& p, double tol) {
  if (r.is_zero()) throw Error(ErrorKind::domain_error, "order of the zero function");
  if (p.is_infinity()) return r.den().degree() - r.num().degree();
  return approx_valuation(r.num().taylor_shift(p.value()), tol) -
         approx_valuation(r.den().taylor_shift(p.value()), tol);
}

QComplex residue_at(const QRational& r, const QPoint& p) {
  if (p.is_infinity())
    throw Error(ErrorKind::unsupported_point, "residue at infinity; use order_at with the w = 1/z chart");
  if (r.is_zero()) return QComplex(0);
  const QPoly n = r.num().taylor_shift(p.value());
  const QPoly d = r.den().taylor_shift(p.value());
  const int kn = n.valuation();
  const int kd = d.valuation();
  const int j = kd - kn - 1;
  if (j < 0) return QComplex(0);
  return series_quotient_coeff(n.shift_down(kn), d.shift_down(kd), j);
}

cplx residue_at(const CRational& r, const CPoint& p, double tol) {
  if (p.is_infinity())
    throw Error(ErrorKind::unsupported_point, "residue at infinity; use order_at with the w = 1/z chart");
  if (r.is_zero()) return 0.0;
  const CPoly n = r.num().taylor_shift(p.value());
  const CPoly d = r.den().taylor_shift(p.value());
  const int kn = approx_valuation(n, tol);
  const int kd = approx_valuation(d, tol);
  const int j = kd - kn - 1;
  if (j < 0) return 0.0;
  return series_quotient_coeff(drop_low(n, kn), drop_low(d, kd), j);
}

bool is_identically_zero(const QRational& r) {
  const QPoly& n = r.num();
  const int points = std::max(n.degree(), 0) + 1;
  for (int k = 0; k < points; ++k)
    if (!n(QComplex(k)).is_zero()) return false;
  return true;
}

bool is_identically_zero(const CRational&) {
  throw Error(ErrorKind::requires_exact_mode, "identity testing needs exact coefficients");
}

LocalForm local_form(const QRational& r, const QPoint& b) {
  if (r.is_zero()) throw Error(ErrorKind::domain_error, "local form of the zero function");
  LocalForm lf;
  if (b.is_infinity()) {
    const int dn = r.num().degree();
    const int dd = r.den().degree();
    lf.at_infinity = true;
    lf.order = dd - dn;
    lf.regular = CRational(approx(r.num().reversed(dn)), approx(r.den().reversed(dd)));
    return lf;
  }
  const QPoly n = r.num().taylor_shift(b.value());
  const QPoly d = r.den().taylor_shift(b.value());
  const int kn = n.valuation();
  const int kd = d.valuation();
  lf.order = kn - kd;
  lf.center = b.value().to_complex();
  lf.regular = CRational(approx(n.shift_down(kn)), approx(d.shift_down(kd)));
  return lf;
}

}  // namespace minsurf
