#pragma once

#include <vector>

#include "minsurf/errors.hpp"
#include "minsurf/rational.hpp"

namespace minsurf {

/// Finite Laurent polynomial sum_{n=lo}^{hi} c_n z^n. Both end coefficients
/// are nonzero unless the polynomial is identically zero (stored empty,
/// lo = hi = 0).
template <class S>
class LaurentPoly {
 public:
  LaurentPoly() = default;
  LaurentPoly(S c) : coeffs_{std::move(c)} { trim(); }
  LaurentPoly(int lo, std::vector<S> coeffs) : lo_(lo), coeffs_(std::move(coeffs)) { trim(); }

  static LaurentPoly monomial(S c, int n) { return LaurentPoly(n, std::vector<S>{std::move(c)}); }

  int lo() const noexcept { return lo_; }
  int hi() const noexcept { return coeffs_.empty() ? lo_ : lo_ + static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }

  /// Zero outside [lo, hi].
  S coeff(int n) const {
    if (coeffs_.empty() || n < lo_ || n > hi()) return S(0);
    return coeffs_[static_cast<std::size_t>(n - lo_)];
  }

  cplx operator()(const cplx& z) const {
    cplx acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + to_complex(*it);
    return acc * std::pow(z, lo_);
  }

  friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) { return combine(a, b, S(1)); }
  friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) { return combine(a, b, S(-1)); }
  friend LaurentPoly operator-(const LaurentPoly& a) { return a * S(-1); }
  friend LaurentPoly operator*(LaurentPoly a, const S& s) {
    for (auto& c : a.coeffs_) c *= s;
    a.trim();
    return a;
  }
  friend LaurentPoly operator*(const S& s, LaurentPoly a) { return std::move(a) * s; }
  /// Exact convolution.
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<S> v(a.coeffs_.size() + b.coeffs_.size() - 1, S(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) v[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return LaurentPoly(a.lo_ + b.lo_, std::move(v));
  }
  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    return a.coeffs_ == b.coeffs_ && (a.coeffs_.empty() || a.lo_ == b.lo_);
  }
  friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) { return !(a == b); }

  /// Substitutes z -> z^k (k >= 1); the index range scales by k.
  LaurentPoly compose_power(int k) const {
    if (k < 1) throw Error(ErrorKind::domain_error, "compose_power requires k >= 1");
    if (is_zero()) return {};
    std::vector<S> v((coeffs_.size() - 1) * static_cast<std::size_t>(k) + 1, S(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) v[i * static_cast<std::size_t>(k)] = coeffs_[i];
    return LaurentPoly(lo_ * k, std::move(v));
  }

  /// conj(l(-1/conj(z))) = sum conj(c_n) (-1)^n z^-n.
  LaurentPoly reflect() const {
    if (is_zero()) return {};
    using std::conj;
    std::vector<S> v(coeffs_.size(), S(0));
    for (int n = lo_; n <= hi(); ++n) {
      S c = conj(coeff(n));
      if (n % 2 != 0) c = -c;
      v[static_cast<std::size_t>(hi() - n)] = c;
    }
    return LaurentPoly(-hi(), std::move(v));
  }

  LaurentPoly derivative() const {
    std::vector<S> v(coeffs_.size(), S(0));
    for (int n = lo_; n <= hi(); ++n) v[static_cast<std::size_t>(n - lo_)] = coeff(n) * S(static_cast<long>(n));
    return LaurentPoly(lo_ - 1, std::move(v));
  }

  /// As a rational function num(z) / z^-lo.
  RationalFunction<S> to_rational() const {
    if (is_zero()) return {};
    Polynomial<S> p(coeffs_);
    if (lo_ >= 0) return RationalFunction<S>(p.shift_up(lo_));
    return RationalFunction<S>(p, Polynomial<S>::monomial(S(1), -lo_));
  }

  /// Accepts a rational function whose denominator is a monomial.
  static LaurentPoly from_rational(const RationalFunction<S>& r) {
    const auto& den = r.den();
    if (den.valuation() != den.degree())
      throw Error(ErrorKind::domain_error, "rational function is not a Laurent polynomial");
    const int k = den.degree();
    const S inv = S(1) / den.leading();
    std::vector<S> v;
    for (const auto& c : r.num().coeffs()) v.push_back(c * inv);
    return LaurentPoly(-k, std::move(v));
  }

  const std::vector<S>& raw() const noexcept { return coeffs_; }

 private:
  static LaurentPoly combine(const LaurentPoly& a, const LaurentPoly& b, const S& sign) {
    if (a.is_zero()) return b * sign;
    if (b.is_zero()) return a;
    const int lo = std::min(a.lo_, b.lo_);
    const int hi = std::max(a.hi(), b.hi());
    std::vector<S> v(static_cast<std::size_t>(hi - lo + 1), S(0));
    for (int n = a.lo_; n <= a.hi(); ++n) v[static_cast<std::size_t>(n - lo)] += a.coeff(n);
    for (int n = b.lo_; n <= b.hi(); ++n) v[static_cast<std::size_t>(n - lo)] += sign * b.coeff(n);
    return LaurentPoly(lo, std::move(v));
  }

  void trim() {
    while (!coeffs_.empty() && minsurf::is_zero(coeffs_.back())) coeffs_.pop_back();
    std::size_t k = 0;
    while (k < coeffs_.size() && minsurf::is_zero(coeffs_[k])) ++k;
    if (k > 0) {
      coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(k));
      lo_ += static_cast<int>(k);
    }
    if (coeffs_.empty()) lo_ = 0;
  }

  int lo_ = 0;
  std::vector<S> coeffs_;
};

using QLaurent = LaurentPoly<QComplex>;

}  // namespace minsurf
