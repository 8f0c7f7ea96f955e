#pragma once

#include <random>

#include "minsurf/parse.hpp"
#include "minsurf/rational.hpp"

namespace testing_support {

using namespace minsurf;

inline QComplex q(long re, long im = 0) { return QComplex(mpq_class(re), mpq_class(im)); }
inline QRational R(std::string_view s) { return parse_rational(s); }

inline QComplex random_q(std::mt19937_64& rng, int range = 5) {
  std::uniform_int_distribution<long> u(-range, range);
  std::uniform_int_distribution<long> d(1, 3);
  return QComplex(mpq_class(u(rng), d(rng)), mpq_class(u(rng), d(rng)));
}

inline QPoly random_poly(std::mt19937_64& rng, int degree, int range = 5) {
  std::vector<QComplex> c;
  for (int i = 0; i <= degree; ++i) c.push_back(random_q(rng, range));
  if (c.back().is_zero()) c.back() = QComplex(1);
  return QPoly(std::move(c));
}

/// Random rational function of degree <= max_degree with nonzero numerator.
inline QRational random_rational(std::mt19937_64& rng, int max_degree) {
  std::uniform_int_distribution<int> deg(0, max_degree);
  QPoly num = random_poly(rng, deg(rng));
  QPoly den = random_poly(rng, deg(rng));
  return QRational(num, den);
}

}  // namespace testing_support
