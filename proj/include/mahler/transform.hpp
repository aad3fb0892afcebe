#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "mahler/laurent.hpp"
#include "mahler/measure.hpp"
#include "mahler/special.hpp"

namespace mahler {

/// A transform spec whose hypotheses do not hold.
class SpecError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The change of variables x -> f(x)/g(x) with f = lambda * x^k * conj(g)(1/x),
/// which preserves the Mahler measure when g has all roots outside the open
/// unit disc and k exceeds deg g.
struct TransformSpec {
  std::string variable;
  LaurentPoly g;  // univariate polynomial (its own variable name is immaterial)
  std::int64_t k = 0;
  UnitComplex lambda;
};

struct ValidationIssue {
  std::string code;  // stable identifier, one per hypothesis
  std::string message;
};

struct ValidationReport {
  bool valid = false;
  double root_margin = 0.0;  // min over roots of g of |root| - 1
  std::vector<ValidationIssue> errors;
  std::vector<ValidationIssue> warnings;  // e.g. roots within 1e-9 of the circle
};

/// Checks k > deg g, g(0) != 0, and that the roots of g lie outside the unit
/// disc (numerically, with margin 1e-12; moduli below 1 + 1e-9 warn).
/// |lambda| = 1 holds by construction of UnitComplex.
ValidationReport validate_spec(const TransformSpec& spec);

struct TransformResult {
  RationalFn p_tilde;            // P with variable -> f/g, denominators cleared
  LaurentPoly cleared_numerator; // numerator of p_tilde
  std::int64_t denominator_power = 0;  // l: p_tilde = cleared_numerator / g^l
                                       // when P is a polynomial in the variable
  double correction = 0.0;             // l * m(g), nats
};

/// Applies the substitution. Negative exponents of the variable are first
/// cleared by a monomial factor (measure-preserving). For polynomial P the
/// result satisfies m(p_tilde) = m(cleared_numerator) - denominator_power * m(g).
TransformResult apply_transform(const RationalFn& p, const TransformSpec& spec);

struct InvarianceReport {
  MeasureResult lhs;      // m(P)
  double rhs_value = 0.0; // m(p_tilde), via the cleared-numerator decomposition
  double rhs_stderr = 0.0;
  double difference = 0.0;
  double tolerance = 0.0;  // max(3 * (stderr_lhs + stderr_rhs), 1e-9)
  bool pass = false;
  TransformResult transform;
};

/// Measures both sides of the invariance m(P) = m(p_tilde) with independent
/// quadrature runs (the right side uses a derived seed).
InvarianceReport verify_invariance(const RationalFn& p, const TransformSpec& spec,
                                   const QuadConfig& cfg = {});

/// The rational-function families
///   R_m(x1..xm, z)       = z + prod_i (1 - x_i)/(1 + x_i)
///   S_m(x1..xm, x, y, z) = (1+x) z + prod_i (1 - x_i)/(1 + x_i) * (1+y)
///   T_m(x1..xm, x, y)    = 1 + prod_i (1 - x_i)/(1 + x_i) * x
///                            + (1 - prod_i (1 - x_i)/(1 + x_i)) * y
/// with optional per-variable substitutions x_i -> f/g. A substituted factor
/// is normalized to ((f - g)/c) / ((f + g)/c) with c the signed content of
/// f + g, which flips the factor's sign relative to the literal substitution
/// (x_i -> 1/x_i shows the flip preserves the measure) and makes the
/// denominator a primitive polynomial with Mahler measure zero.
/// Keys of `specs` are the family variables "x1".."xm".
RationalFn build_family(Family family, int m,
                        const std::map<std::string, TransformSpec>& specs = {});

/// (F, F*) with F* = (prod_i y_i^(deg_i F)) * conj-coeffs(F)(1/y1..1/yn);
/// the common zero set of the pair cuts out the variety where the measure
/// computation of F localizes. Applying the star twice returns a monomial
/// multiple of F.
std::pair<LaurentPoly, LaurentPoly> reciprocal_pair(const LaurentPoly& F);

enum class IdentityStatus { proven, conjectural };

struct IdentityRecord {
  std::string key;        // stable identifier
  std::string lhs_text;   // source form of the left-hand side
  RationalFn lhs;
  NamedConstant rhs;      // rhs.user_supplied: value must come from the caller
  IdentityStatus status;
  std::string provenance; // how the identity arises, free text
};

/// The 13 catalogued identities (proven and conjectural) with their
/// right-hand-side constants.
std::vector<IdentityRecord> identity_catalog();

}  // namespace mahler
