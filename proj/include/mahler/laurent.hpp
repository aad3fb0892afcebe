#ifndef MAHLER_LAURENT_HPP
#define MAHLER_LAURENT_HPP

#include "mahler/rational.hpp"

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace mahler {

using ExponentVec = std::vector<std::int64_t>;

// Graded order: total degree first, then entry-wise lexicographic.
// Only ever compares vectors of equal length (monomials of one polynomial).
struct GradedLex {
  bool operator()(const ExponentVec& a, const ExponentVec& b) const;
};

/// Sparse Laurent polynomial over the Gaussian rationals.
///
/// Each polynomial carries its own variable list in first-appearance order;
/// arithmetic between polynomials merges the lists. Zero coefficients are
/// never stored. Equality compares the underlying mathematical object (the
/// variable order and unused variables do not matter), while printing uses
/// the recorded order.
class LaurentPoly {
 public:
  using TermMap = std::map<ExponentVec, GaussianRational, GradedLex>;

  LaurentPoly() = default;

  static LaurentPoly constant(GaussianRational c);
  static LaurentPoly variable(const std::string& name);
  static LaurentPoly monomial(std::vector<std::string> vars, ExponentVec exps,
                              GaussianRational coeff);

  const std::vector<std::string>& variables() const { return vars_; }
  const TermMap& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  // Value when is_constant(); the zero polynomial yields 0.
  GaussianRational constant_value() const;

  bool uses(const std::string& var) const;
  int var_index(const std::string& var) const;  // -1 when absent

  // Largest/smallest exponent of `var` over all terms; 0 for the zero
  // polynomial or when the variable does not occur.
  std::int64_t degree_in(const std::string& var) const;
  std::int64_t min_exponent_in(const std::string& var) const;
  std::int64_t total_degree() const;  // max over terms of the exponent sum

  LaurentPoly operator-() const;
  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }

  LaurentPoly scaled(const GaussianRational& c) const;
  LaurentPoly pow(std::uint64_t e) const;

  // Drops variables not appearing in any term.
  LaurentPoly pruned() const;
  // Reorders/extends the variable list (must be a superset of the used ones).
  LaurentPoly with_variables(std::vector<std::string> vars) const;
  LaurentPoly renamed(const std::string& from, const std::string& to) const;

  // Canonical monomial -> coefficient view keyed by variable name; used for
  // order-insensitive equality and hashing-type comparisons.
  std::map<std::map<std::string, std::int64_t>, GaussianRational> canonical_view() const;
  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b);
  friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) { return !(a == b); }

  // Evaluation at a point given in this polynomial's variable order.
  std::complex<double> eval(std::span<const std::complex<double>> point) const;
  GaussianRational eval_exact(std::span<const GaussianRational> point) const;

  void insert_term(const ExponentVec& e, GaussianRational c);  // accumulates

 private:
  std::vector<std::string> vars_;
  TermMap terms_;

  friend LaurentPoly merge_vars(const LaurentPoly& a, const LaurentPoly& b,
                                LaurentPoly* b_embedded);
};

/// Quotient of Laurent polynomials, stored verbatim (no cancellation).
/// A constant denominator is folded into the numerator so polynomials are
/// exactly the values with denominator 1.
class RationalFn {
 public:
  RationalFn() : num_(), den_(LaurentPoly::constant(GaussianRational{1})) {}
  RationalFn(LaurentPoly num) : RationalFn(std::move(num), LaurentPoly::constant(1)) {}
  RationalFn(LaurentPoly num, LaurentPoly den);

  const LaurentPoly& num() const { return num_; }
  const LaurentPoly& den() const { return den_; }
  bool is_polynomial() const { return den_.is_constant(); }

  // Union of numerator and denominator variables, numerator order first.
  std::vector<std::string> variables() const;

  friend bool operator==(const RationalFn& a, const RationalFn& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const RationalFn& a, const RationalFn& b) { return !(a == b); }

 private:
  LaurentPoly num_;
  LaurentPoly den_;
};

}  // namespace mahler

#endif
