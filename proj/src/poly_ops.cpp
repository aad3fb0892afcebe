#include "mahler/poly_ops.hpp"

#include <algorithm>
#include <stdexcept>

namespace mahler {

LaurentPoly conjugate_coeffs(const LaurentPoly& p) {
  LaurentPoly r;
  for (const auto& [e, c] : p.terms())
    r += LaurentPoly::monomial(p.variables(), e, c.conj());
  return r.with_variables(p.variables());
}

LaurentPoly reciprocal_conjugate(const LaurentPoly& g, std::int64_t k,
                                 const UnitComplex& lambda) {
  std::vector<std::string> used;
  for (const auto& v : g.variables())
    if (g.uses(v)) used.push_back(v);
  if (used.size() > 1)
    throw std::invalid_argument("reciprocal_conjugate: g must be univariate");
  if (g.is_zero()) throw std::invalid_argument("reciprocal_conjugate: g must be nonzero");

  std::string var = used.empty() ? (g.variables().empty() ? "x" : g.variables()[0]) : used[0];
  std::int64_t deg = g.degree_in(var);
  if (g.min_exponent_in(var) < 0)
    throw std::invalid_argument("reciprocal_conjugate: g must be a polynomial");
  // g(0) is the coefficient of var^0; it must not vanish.
  bool has_const = false;
  int vi = g.var_index(var);
  for (const auto& [e, c] : g.terms()) {
    std::int64_t ev = vi < 0 ? 0 : e[vi];
    if (ev == 0) has_const = true;
  }
  if (!has_const) throw std::invalid_argument("reciprocal_conjugate: g(0) must be nonzero");
  if (k < deg) throw std::invalid_argument("reciprocal_conjugate: k must be >= deg g");

  // lambda * x^k * conj(g)(1/x): term c * x^e becomes lambda * conj(c) * x^(k-e).
  LaurentPoly r;
  for (const auto& [e, c] : g.terms()) {
    std::int64_t ev = vi < 0 ? 0 : e[vi];
    r += LaurentPoly::monomial({var}, {k - ev}, lambda.value() * c.conj());
  }
  return r;
}

std::vector<LaurentPoly> coeffs_in_var(const LaurentPoly& p, const std::string& var) {
  int vi = p.var_index(var);
  if (vi < 0 || !p.uses(var)) return {p};
  if (p.min_exponent_in(var) < 0)
    throw std::invalid_argument("coeffs_in_var: negative exponent in " + var);
  std::int64_t deg = p.degree_in(var);
  std::vector<LaurentPoly> out(static_cast<std::size_t>(deg) + 1);
  for (const auto& [e, c] : p.terms()) {
    ExponentVec rest = e;
    std::int64_t j = rest[vi];
    rest[vi] = 0;
    out[static_cast<std::size_t>(j)] += LaurentPoly::monomial(p.variables(), rest, c);
  }
  for (auto& q : out) q = q.pruned();
  return out;
}

std::pair<LaurentPoly, ExponentVec> laurent_normalize(const LaurentPoly& p) {
  const std::size_t n = p.variables().size();
  ExponentVec shift(n, 0);
  for (const auto& [e, c] : p.terms())
    for (std::size_t i = 0; i < n; ++i) shift[i] = std::min(shift[i], e[i]);
  for (auto& s : shift) s = -s;  // now >= 0, the clearing monomial's exponents
  bool trivial = std::all_of(shift.begin(), shift.end(), [](std::int64_t s) { return s == 0; });
  if (trivial) return {p, shift};
  LaurentPoly mono = LaurentPoly::monomial(p.variables(), shift, GaussianRational{1});
  return {(p * mono).with_variables(p.variables()), shift};
}

namespace {

// sum_j coeffs[j] * f^j * g^(deg-j), computed with running powers.
LaurentPoly clear_substitute(const std::vector<LaurentPoly>& coeffs, const LaurentPoly& f,
                             const LaurentPoly& g) {
  const std::size_t deg = coeffs.size() - 1;
  std::vector<LaurentPoly> fpow(deg + 1), gpow(deg + 1);
  fpow[0] = LaurentPoly::constant(1);
  gpow[0] = LaurentPoly::constant(1);
  for (std::size_t j = 1; j <= deg; ++j) {
    fpow[j] = fpow[j - 1] * f;
    gpow[j] = gpow[j - 1] * g;
  }
  LaurentPoly acc;
  for (std::size_t j = 0; j <= deg; ++j) {
    if (coeffs[j].is_zero()) continue;
    acc += coeffs[j] * fpow[j] * gpow[deg - j];
  }
  return acc;
}

}  // namespace

RationalFn substitute_rational(const RationalFn& P, const std::string& var,
                               const LaurentPoly& f, const LaurentPoly& g) {
  if (g.is_zero()) throw std::invalid_argument("substitute_rational: zero g");
  if (P.num().min_exponent_in(var) < 0 || P.den().min_exponent_in(var) < 0)
    throw std::invalid_argument(
        "substitute_rational: negative exponent in substituted variable; "
        "apply laurent_normalize first");

  auto ncoeffs = coeffs_in_var(P.num(), var);
  auto dcoeffs = coeffs_in_var(P.den(), var);
  std::int64_t a = static_cast<std::int64_t>(ncoeffs.size()) - 1;
  std::int64_t b = static_cast<std::int64_t>(dcoeffs.size()) - 1;

  LaurentPoly num = clear_substitute(ncoeffs, f, g);
  LaurentPoly den = clear_substitute(dcoeffs, f, g);
  if (a >= b)
    den = den * g.pow(static_cast<std::uint64_t>(a - b));
  else
    num = num * g.pow(static_cast<std::uint64_t>(b - a));
  return RationalFn(std::move(num), std::move(den));
}

LaurentPoly rotate_variable(const LaurentPoly& p, const std::string& var,
                            const UnitComplex& zeta) {
  int vi = p.var_index(var);
  if (vi < 0) return p;
  LaurentPoly r;
  for (const auto& [e, c] : p.terms())
    r += LaurentPoly::monomial(p.variables(), e, c * zeta.pow(e[vi]));
  return r.with_variables(p.variables());
}

}  // namespace mahler
