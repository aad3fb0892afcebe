#ifndef MAHLER_EXPR_HPP
#define MAHLER_EXPR_HPP

#include "mahler/laurent.hpp"

#include <stdexcept>
#include <string>

namespace mahler {

/// Parse failure; `position` is a 0-based byte offset into the input.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string msg, std::size_t position);
  std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

/// Parses the expression grammar
///
///   expr     := term (('+'|'-') term)*
///   term     := factor (('*'|'/') factor)*
///   factor   := '-' factor | atom ('^' exponent)?
///   atom     := rational | 'i' | identifier | '(' expr ')'
///   rational := digits ('/' digits)?          (greedy: 1/2 is one atom)
///   exponent := ['-'] digits                  (|exponent| <= 2^31)
///
/// into a rational function. Integer literals are arbitrary precision;
/// 'i' is the imaginary unit and is reserved (not usable as a variable).
/// Division produces a rational function unless the divisor is a monomial,
/// which is a unit among Laurent polynomials and folds into the numerator.
RationalFn parse(const std::string& text);

/// parse() restricted to Laurent polynomials; throws ParseError if the
/// result has a non-monomial denominator.
LaurentPoly parse_poly(const std::string& text);

/// Deterministic printer: terms in descending graded-lexicographic order,
/// variables inside a monomial in the polynomial's recorded order. The
/// output reparses to an equal polynomial.
std::string to_string(const LaurentPoly& p);
std::string to_string(const RationalFn& f);
std::string to_string(const GaussianRational& c);

}  // namespace mahler

#endif
