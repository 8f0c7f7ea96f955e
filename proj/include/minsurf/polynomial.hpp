#pragma once

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "minsurf/errors.hpp"
#include "minsurf/qcomplex.hpp"

namespace minsurf {

/// Dense univariate polynomial, coefficients in ascending degree. The zero
/// polynomial has no coefficients and degree -1; otherwise the leading
/// coefficient is nonzero.
template <class S>
class Polynomial {
 public:
  using scalar_type = S;

  Polynomial() = default;
  Polynomial(S c) : coeffs_{std::move(c)} { trim(); }
  explicit Polynomial(std::vector<S> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

  static Polynomial monomial(S c, int k) {
    std::vector<S> v(static_cast<std::size_t>(k) + 1, S(0));
    v.back() = std::move(c);
    return Polynomial(std::move(v));
  }
  static Polynomial x() { return monomial(S(1), 1); }
  /// z - b
  static Polynomial linear_root(const S& b) { return Polynomial(std::vector<S>{-b, S(1)}); }

  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  bool is_constant() const noexcept { return coeffs_.size() <= 1; }
  const std::vector<S>& coeffs() const noexcept { return coeffs_; }
  S coeff(int k) const {
    return (k < 0 || k > degree()) ? S(0) : coeffs_[static_cast<std::size_t>(k)];
  }
  const S& leading() const { return coeffs_.back(); }

  S operator()(const S& z) const {
    S acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
      acc *= z;
      acc += *it;
    }
    return acc;
  }

  /// Number of trailing zero coefficients (multiplicity of the root 0).
  int valuation() const {
    int k = 0;
    while (k <= degree() && minsurf::is_zero(coeffs_[static_cast<std::size_t>(k)])) ++k;
    return k;
  }

  /// p(z) / z^k, dropping the k lowest coefficients.
  Polynomial shift_down(int k) const {
    if (k >= static_cast<int>(coeffs_.size())) return {};
    return Polynomial(std::vector<S>(coeffs_.begin() + k, coeffs_.end()));
  }
  Polynomial shift_up(int k) const {
    if (is_zero()) return {};
    std::vector<S> v(static_cast<std::size_t>(k), S(0));
    v.insert(v.end(), coeffs_.begin(), coeffs_.end());
    return Polynomial(std::move(v));
  }

  Polynomial derivative() const {
    if (coeffs_.size() <= 1) return {};
    std::vector<S> v(coeffs_.size() - 1);
    for (std::size_t k = 1; k < coeffs_.size(); ++k) v[k - 1] = coeffs_[k] * S(static_cast<long>(k));
    return Polynomial(std::move(v));
  }

  /// p(z + b), by repeated synthetic division.
  Polynomial taylor_shift(const S& b) const {
    std::vector<S> c = coeffs_;
    const std::size_t n = c.size();
    for (std::size_t i = 0; i + 1 < n; ++i)
      for (std::size_t j = n - 1; j > i; --j) c[j - 1] += b * c[j];
    return Polynomial(std::move(c));
  }

  /// z^n p(1/z) for n >= degree.
  Polynomial reversed(int n) const {
    std::vector<S> v(static_cast<std::size_t>(n) + 1, S(0));
    for (int k = 0; k <= degree(); ++k) v[static_cast<std::size_t>(n - k)] = coeffs_[static_cast<std::size_t>(k)];
    return Polynomial(std::move(v));
  }

  Polynomial monic() const {
    if (is_zero()) return {};
    const S inv = S(1) / leading();
    return *this * inv;
  }

  /// Coefficientwise map, e.g. conjugation.
  template <class F>
  auto map(F&& f) const {
    using T = decltype(f(std::declval<const S&>()));
    std::vector<T> v;
    v.reserve(coeffs_.size());
    for (const auto& c : coeffs_) v.push_back(f(c));
    return Polynomial<T>(std::move(v));
  }

  Polynomial& operator+=(const Polynomial& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), S(0));
    for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
    trim();
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), S(0));
    for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
    trim();
    return *this;
  }
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator-(const Polynomial& a) { return a * S(-1); }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<S> v(a.coeffs_.size() + b.coeffs_.size() - 1, S(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) v[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return Polynomial(std::move(v));
  }
  friend Polynomial operator*(Polynomial a, const S& s) {
    for (auto& c : a.coeffs_) c *= s;
    a.trim();
    return a;
  }
  friend Polynomial operator*(const S& s, Polynomial a) { return std::move(a) * s; }

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

  Polynomial pow(int e) const {
    Polynomial r(S(1));
    for (int k = 0; k < e; ++k) r = r * *this;
    return r;
  }

 private:
  void trim() {
    while (!coeffs_.empty() && minsurf::is_zero(coeffs_.back())) coeffs_.pop_back();
  }

  std::vector<S> coeffs_;
};

using QPoly = Polynomial<QComplex>;
using CPoly = Polynomial<cplx>;

/// Euclidean division a = q*b + r with deg r < deg b.
template <class S>
std::pair<Polynomial<S>, Polynomial<S>> divmod(const Polynomial<S>& a, const Polynomial<S>& b) {
  if (b.is_zero()) throw Error(ErrorKind::domain_error, "polynomial division by zero");
  if (a.degree() < b.degree()) return {Polynomial<S>(), a};
  std::vector<S> r = a.coeffs();
  std::vector<S> q(static_cast<std::size_t>(a.degree() - b.degree()) + 1, S(0));
  const S inv_lead = S(1) / b.leading();
  const int db = b.degree();
  for (int k = a.degree() - db; k >= 0; --k) {
    const S c = r[static_cast<std::size_t>(k + db)] * inv_lead;
    q[static_cast<std::size_t>(k)] = c;
    if (is_zero(c)) continue;
    for (int j = 0; j <= db; ++j) r[static_cast<std::size_t>(k + j)] -= c * b.coeffs()[static_cast<std::size_t>(j)];
  }
  r.resize(static_cast<std::size_t>(db));
  return {Polynomial<S>(std::move(q)), Polynomial<S>(std::move(r))};
}

/// Monic gcd. Exact coefficients only; a floating-point Euclid is meaningless.
template <class S>
Polynomial<S> gcd(Polynomial<S> a, Polynomial<S> b) {
  static_assert(is_exact_v<S>, "polynomial gcd requires exact coefficients");
  while (!b.is_zero()) {
    auto r = divmod(a, b).second.monic();
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

/// Exact quotient; throws if b does not divide a.
template <class S>
Polynomial<S> exact_div(const Polynomial<S>& a, const Polynomial<S>& b) {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) throw Error(ErrorKind::domain_error, "polynomial is not divisible");
  return q;
}

/// Multiplicity of b as a root of p (exact). p must be nonzero.
int multiplicity_at(const QPoly& p, const QComplex& b);

/// Removes every factor (z - b) from p; returns the deflated polynomial.
QPoly strip_root(const QPoly& p, const QComplex& b, int* removed = nullptr);

CPoly approx(const QPoly& p);

}  // namespace minsurf
