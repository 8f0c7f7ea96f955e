#pragma once

#include <string>
#include <string_view>

#include "minsurf/laurent.hpp"
#include "minsurf/rational.hpp"

namespace minsurf {

// Plain-text grammar for exact rational functions in z:
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := ('-' | '+')? power
//   power   := primary ('^' '-'? INT)?
//   primary := NUMBER | 'i' | 'z' | '(' expr ')'
//   NUMBER  := INT ('/' INT)? 'i'?  |  DECIMAL 'i'?
//
// A number literal absorbs a directly following '/INT' and 'i', so `3/4i`
// reads as (3/4)i and `(1/2+0i)*z^2` is the canonical coefficient form.
QRational parse_rational(std::string_view text);
QComplex parse_complex(std::string_view text);
/// A rational function whose denominator is a monomial, e.g. `z + z^-1`.
QLaurent parse_laurent(std::string_view text);
mpq_class parse_real(std::string_view text);

/// Canonical text; parse_rational(format(r)) == r exactly.
std::string format(const QPoly& p);
std::string format(const QRational& r);
std::string format(const QLaurent& l);

}  // namespace minsurf
