#pragma once

#include <cmath>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "minsurf/qcomplex.hpp"

namespace minsurf {

/// A point of the Riemann sphere: a finite value or infinity.
template <class S>
class SpherePoint {
 public:
  SpherePoint() : value_(S(0)) {}
  SpherePoint(S v) : value_(std::move(v)) {}
  static SpherePoint infinity() {
    SpherePoint p;
    p.value_.reset();
    return p;
  }

  bool is_infinity() const noexcept { return !value_.has_value(); }
  bool is_finite() const noexcept { return value_.has_value(); }
  const S& value() const { return *value_; }

  friend bool operator==(const SpherePoint& a, const SpherePoint& b) { return a.value_ == b.value_; }
  friend bool operator!=(const SpherePoint& a, const SpherePoint& b) { return !(a == b); }
  // Finite points ordered by value, infinity last.
  friend bool operator<(const SpherePoint& a, const SpherePoint& b)
    requires is_exact_v<S>
  {
    if (a.is_infinity()) return false;
    if (b.is_infinity()) return true;
    return a.value() < b.value();
  }

 private:
  std::optional<S> value_;
};

using QPoint = SpherePoint<QComplex>;
using CPoint = SpherePoint<cplx>;

inline cplx approx_value(const QComplex& z) { return z.to_complex(); }
inline cplx approx_value(const cplx& z) { return z; }

template <class S>
CPoint approx(const SpherePoint<S>& p) {
  return p.is_infinity() ? CPoint::infinity() : CPoint(approx_value(p.value()));
}

/// Half the Euclidean chord between the stereographic preimages; in [0, 1].
template <class S>
double chordal(const SpherePoint<S>& a, const SpherePoint<S>& b) {
  if (a.is_infinity() && b.is_infinity()) return 0.0;
  if (a.is_infinity() || b.is_infinity()) {
    const cplx v = approx_value(a.is_infinity() ? b.value() : a.value());
    return 1.0 / std::sqrt(1.0 + std::norm(v));
  }
  const cplx x = approx_value(a.value());
  const cplx y = approx_value(b.value());
  return std::abs(x - y) / (std::sqrt(1.0 + std::norm(x)) * std::sqrt(1.0 + std::norm(y)));
}

/// z -> -1/conj(z), swapping 0 and infinity. Fixed-point free and involutive.
template <class S>
SpherePoint<S> antipodal(const SpherePoint<S>& a) {
  if (a.is_infinity()) return SpherePoint<S>(S(0));
  if (is_zero(a.value())) return SpherePoint<S>::infinity();
  using std::conj;
  return SpherePoint<S>(S(-1) / conj(a.value()));
}

/// Class of {a, antipodal(a)} in RP^2 = sphere / antipodal map. The stored
/// representative is canonical: modulus < 1, or modulus 1 with argument in
/// [0, pi). Infinity lands in the class of 0.
template <class S>
class RP2Point {
 public:
  explicit RP2Point(const SpherePoint<S>& a);

  const SpherePoint<S>& representative() const noexcept { return rep_; }

  friend bool operator==(const RP2Point& x, const RP2Point& y) { return x.rep_ == y.rep_; }
  friend bool operator<(const RP2Point& x, const RP2Point& y)
    requires is_exact_v<S>
  {
    return x.rep_ < y.rep_;
  }

 private:
  SpherePoint<S> rep_;
};

template <class S>
RP2Point<S> to_rp2(const SpherePoint<S>& a) {
  return RP2Point<S>(a);
}

struct Rp2Count {
  int count = 0;
  bool antipodally_closed = true;
  std::vector<std::string> warnings;
};

/// Number of distinct RP^2 classes in an exact point set.
Rp2Count rp2_count(std::span<const QPoint> points);

/// True iff the exact point set is mapped to itself by the antipodal map.
bool antipodally_closed(std::span<const QPoint> points);

std::string to_string(const QPoint& p);

// ---------------------------------------------------------------------------

template <class S>
RP2Point<S>::RP2Point(const SpherePoint<S>& a) {
  if (a.is_infinity()) {
    rep_ = SpherePoint<S>(S(0));
    return;
  }
  const S& v = a.value();
  if constexpr (is_exact_v<S>) {
    const int c = cmp(v.norm(), mpq_class(1));
    if (c < 0) {
      rep_ = a;
    } else if (c > 0) {
      rep_ = antipodal(a);
    } else {
      // On the unit circle the antipode is -v.
      const bool upper = sgn(v.im()) > 0 || (sgn(v.im()) == 0 && sgn(v.re()) > 0);
      rep_ = upper ? a : SpherePoint<S>(-v);
    }
  } else {
    const double n = std::norm(v);
    if (n < 1.0) {
      rep_ = a;
    } else if (n > 1.0) {
      rep_ = antipodal(a);
    } else {
      const bool upper = v.imag() > 0 || (v.imag() == 0 && v.real() > 0);
      rep_ = upper ? a : SpherePoint<S>(-v);
    }
  }
}

}  // namespace minsurf
