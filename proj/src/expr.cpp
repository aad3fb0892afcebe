#include "mahler/expr.hpp"

#include <cctype>
#include <sstream>

namespace mahler {

ParseError::ParseError(std::string msg, std::size_t position)
    : std::runtime_error(msg + " (at offset " + std::to_string(position) + ")"),
      pos_(position) {}

namespace {

RationalFn fn_add(const RationalFn& a, const RationalFn& b) {
  if (a.is_polynomial() && b.is_polynomial()) return RationalFn(a.num() + b.num());
  return RationalFn(a.num() * b.den() + b.num() * a.den(), a.den() * b.den());
}

RationalFn fn_mul(const RationalFn& a, const RationalFn& b) {
  return RationalFn(a.num() * b.num(), a.den() * b.den());
}

RationalFn fn_neg(const RationalFn& a) { return RationalFn(-a.num(), a.den()); }

RationalFn fn_pow(const RationalFn& a, std::int64_t e, std::size_t pos) {
  if (e >= 0)
    return RationalFn(a.num().pow(static_cast<std::uint64_t>(e)),
                      a.den().pow(static_cast<std::uint64_t>(e)));
  if (a.num().is_zero()) throw ParseError("zero raised to a negative power", pos);
  std::uint64_t m = ~static_cast<std::uint64_t>(e) + 1;
  return RationalFn(a.den().pow(m), a.num().pow(m));
}

class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}

  RationalFn run() {
    skip_ws();
    if (eof()) throw ParseError("empty expression", 0);
    RationalFn r = parse_expr();
    skip_ws();
    if (!eof()) throw ParseError(std::string("unexpected character '") + s_[i_] + "'", i_);
    return r;
  }

 private:
  const std::string& s_;
  std::size_t i_ = 0;

  bool eof() const { return i_ >= s_.size(); }
  char peek() const { return eof() ? '\0' : s_[i_]; }
  void skip_ws() {
    while (!eof() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool accept(char c) {
    skip_ws();
    if (peek() == c) {
      ++i_;
      return true;
    }
    return false;
  }

  RationalFn parse_expr() {
    RationalFn acc = parse_term();
    for (;;) {
      if (accept('+'))
        acc = fn_add(acc, parse_term());
      else if (accept('-'))
        acc = fn_add(acc, fn_neg(parse_term()));
      else
        return acc;
    }
  }

  RationalFn parse_term() {
    RationalFn acc = parse_factor();
    for (;;) {
      skip_ws();
      if (peek() == '*') {
        ++i_;
        acc = fn_mul(acc, parse_factor());
      } else if (peek() == '/') {
        std::size_t at = i_;
        ++i_;
        RationalFn d = parse_factor();
        if (d.num().is_zero()) throw ParseError("division by zero", at);
        acc = fn_mul(acc, RationalFn(d.den(), d.num()));
      } else {
        return acc;
      }
    }
  }

  RationalFn parse_factor() {
    skip_ws();
    if (peek() == '-') {
      ++i_;
      return fn_neg(parse_factor());
    }
    RationalFn a = parse_atom();
    skip_ws();
    if (peek() == '^') {
      std::size_t at = i_;
      ++i_;
      std::int64_t e = parse_exponent();
      a = fn_pow(a, e, at);
    }
    return a;
  }

  RationalFn parse_atom() {
    skip_ws();
    if (eof()) throw ParseError("unexpected end of input", i_);
    char c = peek();
    if (c == '(') {
      ++i_;
      RationalFn r = parse_expr();
      skip_ws();
      if (!accept(')')) throw ParseError("expected ')'", i_);
      return r;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      Integer numerator = parse_digits();
      // Greedy rational literal: digits '/' digits forms one atom.
      std::size_t save = i_;
      skip_ws();
      if (peek() == '/') {
        std::size_t slash = i_;
        ++i_;
        skip_ws();
        if (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) {
          Integer denominator = parse_digits();
          if (denominator == 0) throw ParseError("zero denominator in rational literal", slash);
          return RationalFn(LaurentPoly::constant(GaussianRational{Rational(numerator, denominator)}));
        }
        i_ = save;  // plain division; let the term level handle it
      } else {
        i_ = save;
      }
      return RationalFn(LaurentPoly::constant(GaussianRational{Rational(numerator)}));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = i_;
      while (!eof() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) ++i_;
      std::string name = s_.substr(start, i_ - start);
      if (name == "i")
        return RationalFn(LaurentPoly::constant(GaussianRational{Rational(0), Rational(1)}));
      return RationalFn(LaurentPoly::variable(name));
    }
    throw ParseError(std::string("unexpected character '") + c + "'", i_);
  }

  Integer parse_digits() {
    skip_ws();
    if (eof() || !std::isdigit(static_cast<unsigned char>(peek())))
      throw ParseError("expected digits", i_);
    // Accumulate digit-by-digit: string construction of the big integer
    // would treat a leading zero as a base prefix.
    Integer value = 0;
    while (!eof() && std::isdigit(static_cast<unsigned char>(s_[i_]))) {
      value *= 10;
      value += s_[i_] - '0';
      ++i_;
    }
    return value;
  }

  std::int64_t parse_exponent() {
    skip_ws();
    bool neg = false;
    if (peek() == '-') {
      neg = true;
      ++i_;
    }
    std::size_t at = i_;
    Integer d = parse_digits();
    static const Integer kMax = Integer(1) << 31;
    if (d > kMax) throw ParseError("exponent magnitude exceeds 2^31", at);
    std::int64_t v = d.convert_to<std::int64_t>();
    return neg ? -v : v;
  }
};

std::string rational_str(const Rational& q) {
  std::ostringstream os;
  os << q;
  return os.str();
}

// Coefficient in front of a monomial; `parenthesize` receives true when the
// result would otherwise splice ambiguously into a sum or product.
std::string coeff_str(const GaussianRational& c, bool* needs_paren) {
  *needs_paren = false;
  if (c.is_zero()) return "0";
  if (c.im == 0) return rational_str(c.re);
  std::string im_part;
  if (c.im == 1)
    im_part = "i";
  else if (c.im == -1)
    im_part = "-i";
  else
    im_part = rational_str(c.im) + "*i";
  if (c.re == 0) return im_part;
  *needs_paren = true;
  if (c.im > 0) return rational_str(c.re) + "+" + im_part;
  return rational_str(c.re) + im_part;  // im_part already carries the minus
}

}  // namespace

RationalFn parse(const std::string& text) { return Parser(text).run(); }

LaurentPoly parse_poly(const std::string& text) {
  RationalFn f = parse(text);
  if (!f.is_polynomial())
    throw ParseError("expression is not a Laurent polynomial", 0);
  return f.num();
}

std::string to_string(const GaussianRational& c) {
  bool paren = false;
  return coeff_str(c, &paren);
}

std::string to_string(const LaurentPoly& p) {
  if (p.is_zero()) return "0";
  const auto& vars = p.variables();
  std::string out;
  // Descending graded-lex over the stored (ascending) map.
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const auto& [e, c] = *it;
    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += vars[i];
      if (e[i] != 1) mono += "^" + std::to_string(e[i]);
    }
    bool paren = false;
    std::string cs = coeff_str(c, &paren);
    std::string term;
    if (mono.empty()) {
      term = paren ? "(" + cs + ")" : cs;
    } else if (cs == "1") {
      term = mono;
    } else if (cs == "-1") {
      term = "-" + mono;
    } else if (paren) {
      term = "(" + cs + ")*" + mono;
    } else {
      term = cs + "*" + mono;
    }
    if (out.empty()) {
      out = term;
    } else if (term[0] == '-') {
      out += " - " + term.substr(1);
    } else {
      out += " + " + term;
    }
  }
  return out;
}

std::string to_string(const RationalFn& f) {
  if (f.is_polynomial()) return to_string(f.num());
  return "(" + to_string(f.num()) + ")/(" + to_string(f.den()) + ")";
}

}  // namespace mahler
