#pragma once

#include <gmpxx.h>

#include <complex>
#include <string>
#include <type_traits>

namespace minsurf {

using cplx = std::complex<double>;

/// Exact Gaussian rational a/b + (c/d)i backed by GMP rationals.
class QComplex {
 public:
  QComplex() = default;
  QComplex(int re) : re_(re) {}
  QComplex(long re) : re_(re) {}
  QComplex(mpq_class re, mpq_class im = 0) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
  }

  static QComplex i() { return QComplex(0, 1); }
  static QComplex ratio(long num, long den) { return QComplex(mpq_class(num, den)); }

  const mpq_class& re() const noexcept { return re_; }
  const mpq_class& im() const noexcept { return im_; }

  bool is_zero() const noexcept { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const noexcept { return sgn(im_) == 0; }
  bool is_imaginary() const noexcept { return sgn(re_) == 0; }

  QComplex conj() const { return QComplex(re_, -im_); }
  /// |z|^2, exact.
  mpq_class norm() const { return mpq_class(re_ * re_ + im_ * im_); }

  cplx to_complex() const { return {re_.get_d(), im_.get_d()}; }

  QComplex& operator+=(const QComplex& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  QComplex& operator-=(const QComplex& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  QComplex& operator*=(const QComplex& o) {
    mpq_class r = re_ * o.re_ - im_ * o.im_;
    mpq_class i = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(i);
    return *this;
  }
  QComplex& operator/=(const QComplex& o);

  friend QComplex operator+(QComplex a, const QComplex& b) { return a += b; }
  friend QComplex operator-(QComplex a, const QComplex& b) { return a -= b; }
  friend QComplex operator*(QComplex a, const QComplex& b) { return a *= b; }
  friend QComplex operator/(QComplex a, const QComplex& b) { return a /= b; }
  friend QComplex operator-(const QComplex& a) { return QComplex(-a.re_, -a.im_); }

  friend bool operator==(const QComplex& a, const QComplex& b) {
    return cmp(a.re_, b.re_) == 0 && cmp(a.im_, b.im_) == 0;
  }
  friend bool operator!=(const QComplex& a, const QComplex& b) { return !(a == b); }
  // Lexicographic (re, im); only used to keep exact point sets canonical.
  friend bool operator<(const QComplex& a, const QComplex& b) {
    const int c = cmp(a.re_, b.re_);
    return c != 0 ? c < 0 : cmp(a.im_, b.im_) < 0;
  }

  /// Text form `(a+bi)` with rational parts, e.g. `(1/2-3i)`.
  std::string str() const;

 private:
  mpq_class re_{0};
  mpq_class im_{0};
};

template <class S>
inline constexpr bool is_exact_v = std::is_same_v<S, QComplex>;

inline bool is_zero(const QComplex& z) { return z.is_zero(); }
inline bool is_zero(const cplx& z) { return z == cplx{}; }
inline QComplex conj(const QComplex& z) { return z.conj(); }
inline cplx to_complex(const QComplex& z) { return z.to_complex(); }
inline cplx to_complex(const cplx& z) { return z; }

/// Nearest exact value of a finite double complex number.
QComplex to_exact(const cplx& z);

std::string to_string(const mpq_class& q);

}  // namespace minsurf
