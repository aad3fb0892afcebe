#ifndef MAHLER_POLY_OPS_HPP
#define MAHLER_POLY_OPS_HPP

#include "mahler/laurent.hpp"

#include <utility>

namespace mahler {

/// Complex-conjugates every coefficient (exponents untouched).
LaurentPoly conjugate_coeffs(const LaurentPoly& p);

/// lambda * x^k * conj(g)(1/x) for univariate g with g(0) != 0 and k >= deg g.
/// The result is again a polynomial in the same variable, degree exactly k.
LaurentPoly reciprocal_conjugate(const LaurentPoly& g, std::int64_t k,
                                 const UnitComplex& lambda);

/// Coefficients of p viewed as a polynomial in `var`: result[j] multiplies
/// var^j, result.size() == degree_in(var) + 1 and the top entry is nonzero.
/// Requires min_exponent_in(var) >= 0. A polynomial not involving `var`
/// (including a constant) yields the one-element vector {p}.
std::vector<LaurentPoly> coeffs_in_var(const LaurentPoly& p, const std::string& var);

/// Multiplies by the unique monomial that clears all negative exponents,
/// returning the cleared polynomial and the exponent vector of that monomial
/// (in p's variable order). The Mahler measure is unchanged by this.
std::pair<LaurentPoly, ExponentVec> laurent_normalize(const LaurentPoly& p);

/// Substitutes var -> f/g in P = num/den and clears denominators:
/// with num = sum_j n_j var^j (degree a) and den = sum_j d_j var^j (degree b),
/// the result is (sum_j n_j f^j g^(a-j)) / (sum_j d_j f^j g^(b-j)) with a
/// further factor g^|a-b| multiplied onto whichever side keeps the identity
/// P(f/g) = result exact. num and den must have no negative exponents in var
/// (clear them with laurent_normalize first). f and g are typically
/// polynomials in var itself, so the variable survives the substitution.
RationalFn substitute_rational(const RationalFn& P, const std::string& var,
                               const LaurentPoly& f, const LaurentPoly& g);

/// var -> zeta * var for |zeta| = 1; scales each coefficient by zeta^e.
LaurentPoly rotate_variable(const LaurentPoly& p, const std::string& var,
                            const UnitComplex& zeta);

}  // namespace mahler

#endif
