#include "minsurf/parse.hpp"

#include <cctype>

namespace minsurf {
namespace {

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  QRational parse_all() {
    QRational r = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected trailing input");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorKind::parse_error, msg + " at offset " + std::to_string(pos_) + " in '" + std::string(s_) + "'");
  }
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip_ws();
    return pos_ < s_.size() && s_[pos_] == c;
  }
  bool accept(char c) {
    if (!peek(c)) return false;
    ++pos_;
    return true;
  }
  bool digit_at(std::size_t p) const { return p < s_.size() && std::isdigit(static_cast<unsigned char>(s_[p])); }

  std::string digits() {
    const std::size_t start = pos_;
    while (digit_at(pos_)) ++pos_;
    return std::string(s_.substr(start, pos_ - start));
  }

  QRational expr() {
    QRational acc = term();
    for (;;) {
      if (accept('+')) {
        acc = acc + term();
      } else if (accept('-')) {
        acc = acc - term();
      } else {
        return acc;
      }
    }
  }

  QRational term() {
    QRational acc = unary();
    for (;;) {
      if (accept('*')) {
        acc = acc * unary();
      } else if (accept('/')) {
        QRational d = unary();
        if (d.is_zero()) fail("division by zero");
        acc = acc / d;
      } else {
        return acc;
      }
    }
  }

  QRational unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  QRational power() {
    QRational base = primary();
    if (!accept('^')) return base;
    const bool neg = accept('-');
    skip_ws();
    if (!digit_at(pos_)) fail("expected integer exponent");
    const long e = std::stol(digits());
    if (e > 4096) fail("exponent too large");
    if (neg && base.is_zero()) fail("negative power of zero");
    return base.pow(neg ? -static_cast<int>(e) : static_cast<int>(e));
  }

  QRational primary() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      QRational r = expr();
      if (!accept(')')) fail("expected ')'");
      return r;
    }
    if (c == 'z') {
      ++pos_;
      return QRational::z();
    }
    if (c == 'i') {
      ++pos_;
      return QRational(QComplex::i());
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return QRational(number());
    fail(std::string("unexpected character '") + c + "'");
  }

  QComplex number() {
    std::string int_part = digits();
    mpq_class value;
    if (pos_ < s_.size() && s_[pos_] == '.') {
      ++pos_;
      const std::string frac = digits();
      if (int_part.empty() && frac.empty()) fail("malformed decimal");
      mpz_class den = 1;
      for (std::size_t k = 0; k < frac.size(); ++k) den *= 10;
      value = mpq_class(mpz_class(int_part + frac), den);
    } else {
      value = mpq_class(mpz_class(int_part));
      if (pos_ + 1 < s_.size() && s_[pos_] == '/' && digit_at(pos_ + 1)) {
        ++pos_;
        const mpz_class den(digits());
        if (den == 0) fail("zero denominator");
        value = mpq_class(mpz_class(int_part), den);
      }
    }
    value.canonicalize();
    if (pos_ < s_.size() && s_[pos_] == 'i') {
      ++pos_;
      return QComplex(0, value);
    }
    return QComplex(value);
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

std::string term_text(const QComplex& c, int k) {
  std::string t = c.str();
  if (k == 1) {
    t += "*z";
  } else if (k != 0) {
    t += "*z^" + std::to_string(k);
  }
  return t;
}

}  // namespace

QRational parse_rational(std::string_view text) { return Parser(text).parse_all(); }

QComplex parse_complex(std::string_view text) {
  const QRational r = parse_rational(text);
  if (!r.is_constant()) throw Error(ErrorKind::parse_error, "expected a constant, got '" + std::string(text) + "'");
  return r.num().coeff(0);
}

mpq_class parse_real(std::string_view text) {
  const QComplex c = parse_complex(text);
  if (!c.is_real()) throw Error(ErrorKind::parse_error, "expected a real number, got '" + std::string(text) + "'");
  return c.re();
}

QLaurent parse_laurent(std::string_view text) {
  try {
    return QLaurent::from_rational(parse_rational(text));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::parse_error) throw;
    throw Error(ErrorKind::parse_error, "not a Laurent polynomial: '" + std::string(text) + "'");
  }
}

std::string format(const QPoly& p) {
  if (p.is_zero()) return QComplex(0).str();
  std::string out;
  for (int k = p.degree(); k >= 0; --k) {
    const QComplex c = p.coeff(k);
    if (c.is_zero()) continue;
    if (!out.empty()) out += " + ";
    out += term_text(c, k);
  }
  return out;
}

std::string format(const QRational& r) {
  if (r.den().degree() == 0) return format(r.num());
  return "(" + format(r.num()) + ") / (" + format(r.den()) + ")";
}

std::string format(const QLaurent& l) {
  if (l.is_zero()) return QComplex(0).str();
  std::string out;
  for (int n = l.hi(); n >= l.lo(); --n) {
    const QComplex c = l.coeff(n);
    if (c.is_zero()) continue;
    if (!out.empty()) out += " + ";
    out += term_text(c, n);
  }
  return out;
}

}  // namespace minsurf
