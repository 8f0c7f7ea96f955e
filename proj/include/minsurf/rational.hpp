#pragma once

#include <string>
#include <vector>

#include "minsurf/errors.hpp"
#include "minsurf/polynomial.hpp"
#include "minsurf/sphere.hpp"

namespace minsurf {

/// Ratio num/den of polynomials in canonical form: the denominator is monic,
/// and in exact mode num and den are coprime. The zero function is 0/1.
template <class S>
class RationalFunction {
 public:
  using scalar_type = S;

  RationalFunction() : den_(S(1)) { cache(); }
  RationalFunction(S c) : num_(std::move(c)), den_(S(1)) { cache(); }
  RationalFunction(Polynomial<S> num) : num_(std::move(num)), den_(S(1)) { cache(); }
  RationalFunction(Polynomial<S> num, Polynomial<S> den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw Error(ErrorKind::domain_error, "rational function with zero denominator");
    normalize();
  }

  static RationalFunction z() { return RationalFunction(Polynomial<S>::x()); }

  const Polynomial<S>& num() const noexcept { return num_; }
  const Polynomial<S>& den() const noexcept { return den_; }

  bool is_zero() const noexcept { return num_.is_zero(); }
  bool is_constant() const noexcept { return num_.degree() <= 0 && den_.degree() == 0; }
  bool is_polynomial() const noexcept { return den_.degree() == 0; }
  /// Degree as a map of the sphere: max(deg num, deg den).
  int degree() const noexcept { return std::max(num_.degree(), den_.degree()); }

  /// Value at a finite point that is not a pole.
  S at(const S& z) const {
    const S d = den_(z);
    if (minsurf::is_zero(d)) throw Error(ErrorKind::domain_error, "evaluation at a pole");
    return num_(z) / d;
  }

  /// Floating-point evaluation (a pole yields a non-finite value).
  cplx operator()(const cplx& z) const {
    cplx n(0), d(0);
    for (auto it = num_d_.rbegin(); it != num_d_.rend(); ++it) n = n * z + *it;
    for (auto it = den_d_.rbegin(); it != den_d_.rend(); ++it) d = d * z + *it;
    return n / d;
  }

  RationalFunction derivative() const {
    return RationalFunction(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
  }

  RationalFunction<cplx> approx() const {
    if constexpr (is_exact_v<S>) {
      return RationalFunction<cplx>(minsurf::approx(num_), minsurf::approx(den_));
    } else {
      return *this;
    }
  }

  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
    if (a.den_ == b.den_) return RationalFunction(a.num_ + b.num_, a.den_);
    return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
    if (a.den_ == b.den_) return RationalFunction(a.num_ - b.num_, a.den_);
    return RationalFunction(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RationalFunction operator-(const RationalFunction& a) {
    RationalFunction r = a;
    r.num_ = -r.num_;
    r.cache();
    return r;
  }
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
    return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
    if (b.is_zero()) throw Error(ErrorKind::domain_error, "division by the zero rational function");
    return RationalFunction(a.num_ * b.den_, a.den_ * b.num_);
  }
  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const RationalFunction& a, const RationalFunction& b) { return !(a == b); }

  RationalFunction pow(int e) const {
    if (e >= 0) return RationalFunction(num_.pow(e), den_.pow(e));
    return RationalFunction(den_.pow(-e), num_.pow(-e));
  }

  /// Substitutes z -> h(z).
  RationalFunction compose(const RationalFunction& h) const {
    // p(h) for p = num, den, evaluated by Horner over rational functions.
    auto eval = [&h](const Polynomial<S>& p) {
      RationalFunction acc;
      for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it) acc = acc * h + RationalFunction(*it);
      return acc;
    };
    return eval(num_) / eval(den_);
  }

 private:
  void normalize() {
    if (num_.is_zero()) {
      den_ = Polynomial<S>(S(1));
    } else {
      if constexpr (is_exact_v<S>) {
        const auto g = gcd(num_, den_);
        if (g.degree() > 0) {
          num_ = exact_div(num_, g);
          den_ = exact_div(den_, g);
        }
      }
      const S inv = S(1) / den_.leading();
      num_ = num_ * inv;
      den_ = den_ * inv;
    }
    cache();
  }
  void cache() {
    num_d_.clear();
    den_d_.clear();
    for (const auto& c : num_.coeffs()) num_d_.push_back(to_complex(c));
    for (const auto& c : den_.coeffs()) den_d_.push_back(to_complex(c));
  }

  Polynomial<S> num_;
  Polynomial<S> den_;
  std::vector<cplx> num_d_;
  std::vector<cplx> den_d_;
};

using QRational = RationalFunction<QComplex>;
using CRational = RationalFunction<cplx>;

/// Value at a point of the sphere, with poles mapping to infinity.
QPoint eval_extended(const QRational& r, const QPoint& p);

/// Zero order (> 0), pole order (< 0) or 0 at a point of the sphere; infinity
/// is handled in the chart w = 1/z.
int order_at(const QRational& r, const QPoint& p);
/// Floating-point variant: coefficients below tol * |p| count as zero.
int order_at(const CRational& r, const CPoint& p, double tol = 1e-8);

/// Coefficient of (z - p)^-1 in the Laurent expansion at a finite p.
QComplex residue_at(const QRational& r, const QPoint& p);
cplx residue_at(const CRational& r, const CPoint& p, double tol = 1e-8);

/// Polynomial identity test: evaluates the numerator exactly at deg + 1
/// distinct integer points.
bool is_identically_zero(const QRational& r);
/// Always throws requires_exact_mode.
bool is_identically_zero(const CRational& r);

/// Local form at a point b of the sphere in its chart t (t = z - b, or t = 1/z
/// at infinity): r = t^order * regular(t) with regular(0) finite and nonzero.
struct LocalForm {
  int order = 0;
  CRational regular;
  bool at_infinity = false;
  cplx center{};
};
LocalForm local_form(const QRational& r, const QPoint& b);

/// z -> (a z + b) / (c z + d), ad - bc != 0.
template <class S>
class MoebiusTransform {
 public:
  MoebiusTransform(S a, S b, S c, S d) : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
    if (minsurf::is_zero(a_ * d_ - b_ * c_)) throw Error(ErrorKind::domain_error, "degenerate Moebius transform");
  }

  SpherePoint<S> operator()(const SpherePoint<S>& p) const {
    if (p.is_infinity()) {
      if (minsurf::is_zero(c_)) return SpherePoint<S>::infinity();
      return SpherePoint<S>(a_ / c_);
    }
    const S den = c_ * p.value() + d_;
    if (minsurf::is_zero(den)) return SpherePoint<S>::infinity();
    return SpherePoint<S>((a_ * p.value() + b_) / den);
  }

  /// T o g as a rational function.
  RationalFunction<S> after(const RationalFunction<S>& g) const {
    return RationalFunction<S>(g.num() * a_ + g.den() * b_, g.num() * c_ + g.den() * d_);
  }

  const S& a() const { return a_; }
  const S& b() const { return b_; }
  const S& c() const { return c_; }
  const S& d() const { return d_; }

 private:
  S a_, b_, c_, d_;
};

}  // namespace minsurf
