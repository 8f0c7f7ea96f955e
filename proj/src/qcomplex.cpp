#include "minsurf/qcomplex.hpp"

#include <cmath>

#include "minsurf/errors.hpp"

namespace minsurf {

QComplex& QComplex::operator/=(const QComplex& o) {
  const mpq_class n = o.norm();
  if (sgn(n) == 0) throw Error(ErrorKind::domain_error, "division by zero");
  mpq_class r = (re_ * o.re_ + im_ * o.im_) / n;
  mpq_class i = (im_ * o.re_ - re_ * o.im_) / n;
  re_ = std::move(r);
  im_ = std::move(i);
  return *this;
}

std::string to_string(const mpq_class& q) { return q.get_str(); }

std::string QComplex::str() const {
  std::string s = "(" + re_.get_str();
  if (sgn(im_) < 0) {
    s += "-" + mpq_class(-im_).get_str();
  } else {
    s += "+" + im_.get_str();
  }
  return s + "i)";
}

QComplex to_exact(const cplx& z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw Error(ErrorKind::domain_error, "non-finite value cannot enter exact algebra");
  return QComplex(mpq_class(z.real()), mpq_class(z.imag()));
}

}  // namespace minsurf
