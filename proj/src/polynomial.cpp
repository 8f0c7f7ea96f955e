#include "minsurf/polynomial.hpp"

namespace minsurf {

int multiplicity_at(const QPoly& p, const QComplex& b) {
  if (p.is_zero()) throw Error(ErrorKind::domain_error, "multiplicity of a root of the zero polynomial");
  return p.taylor_shift(b).valuation();
}

QPoly strip_root(const QPoly& p, const QComplex& b, int* removed) {
  const int k = multiplicity_at(p, b);
  if (removed) *removed = k;
  if (k == 0) return p;
  return exact_div(p, QPoly::linear_root(b).pow(k));
}

CPoly approx(const QPoly& p) {
  std::vector<cplx> v;
  v.reserve(p.coeffs().size());
  for (const auto& c : p.coeffs()) v.push_back(c.to_complex());
  return CPoly(std::move(v));
}

}  // namespace minsurf
