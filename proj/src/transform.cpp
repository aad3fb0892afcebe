#include "mahler/transform.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

#include "mahler/expr.hpp"
#include "mahler/poly_ops.hpp"
#include "mahler/roots.hpp"

namespace mahler {

namespace {

constexpr double kInsideMargin = 1e-12;   // roots this far inside the circle fail
constexpr double kBoundaryBand = 1e-9;    // moduli below 1 + this warn

// Returns g rewritten as a polynomial in `var` (g's own variable name, if
// any, is immaterial to the transform).
LaurentPoly g_in_variable(const LaurentPoly& g, const std::string& var) {
  LaurentPoly p = g.pruned();
  const auto& vars = p.variables();
  if (vars.empty()) return p;
  if (vars[0] == var) return p;
  return p.renamed(vars[0], var);
}

std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Positive rational dividing every coefficient component (gcd of numerators
// over lcm of denominators), negated when the graded-lex leading coefficient
// points negative, so that division leaves a primitive polynomial with
// positive leading coefficient.
Rational signed_content(const LaurentPoly& p) {
  Integer num_gcd = 0;
  Integer den_lcm = 1;
  for (const auto& [exps, coeff] : p.terms()) {
    for (const Rational* part : {&coeff.re, &coeff.im}) {
      if (*part == 0) continue;
      num_gcd = boost::multiprecision::gcd(
          num_gcd, Integer(boost::multiprecision::abs(
                       boost::multiprecision::numerator(*part))));
      den_lcm = boost::multiprecision::lcm(
          den_lcm, Integer(boost::multiprecision::denominator(*part)));
    }
  }
  if (num_gcd == 0) return Rational(1);
  Rational c(num_gcd, den_lcm);
  const GaussianRational& lead = p.terms().rbegin()->second;
  if (lead.re < 0 || (lead.re == 0 && lead.im < 0)) c = -c;
  return c;
}

std::string join_codes(const ValidationReport& rep) {
  std::string msg = "invalid transform spec:";
  for (const auto& e : rep.errors) msg += " [" + e.code + "] " + e.message;
  return msg;
}

}  // namespace

ValidationReport validate_spec(const TransformSpec& spec) {
  ValidationReport rep;
  rep.root_margin = std::numeric_limits<double>::infinity();
  LaurentPoly g = spec.g.pruned();

  if (g.is_zero()) {
    rep.errors.push_back({"g_zero", "g is the zero polynomial"});
    return rep;
  }
  if (g.variables().size() > 1) {
    rep.errors.push_back({"g_not_univariate", "g must be univariate"});
    return rep;
  }

  std::int64_t deg = 0;
  bool structural_ok = true;
  if (!g.variables().empty()) {
    const std::string& v = g.variables()[0];
    if (g.min_exponent_in(v) < 0) {
      rep.errors.push_back(
          {"g_negative_exponents", "g must be a polynomial (no negative exponents)"});
      structural_ok = false;
    } else {
      deg = g.degree_in(v);
      if (g.min_exponent_in(v) > 0) {
        rep.errors.push_back({"g_vanishes_at_zero", "g(0) must be nonzero"});
        structural_ok = false;
      }
    }
  }
  if (spec.k <= deg)
    rep.errors.push_back({"k_not_greater", "k must exceed deg g"});

  if (structural_ok && deg >= 1) {
    RootSet rs = find_roots(g);
    double margin = std::numeric_limits<double>::infinity();
    for (const auto& r : rs.roots) margin = std::min(margin, std::abs(r) - 1.0);
    rep.root_margin = margin;
    if (margin < -kInsideMargin) {
      rep.errors.push_back(
          {"g_root_inside", "g has a root inside the unit disc"});
    } else if (margin < kBoundaryBand) {
      rep.warnings.push_back(
          {"g_root_near_circle",
           "g has a root within 1e-9 of the unit circle; the hypothesis holds "
           "only marginally in floating point"});
    }
  }

  rep.valid = rep.errors.empty();
  return rep;
}

TransformResult apply_transform(const RationalFn& p, const TransformSpec& spec) {
  ValidationReport rep = validate_spec(spec);
  if (!rep.valid) throw SpecError(join_codes(rep));
  const std::string& v = spec.variable;
  if (v.empty()) throw SpecError("invalid transform spec: [variable_empty] no variable named");
  if (!p.num().uses(v) && !p.den().uses(v))
    throw SpecError("invalid transform spec: [variable_absent] variable '" + v +
                    "' does not occur in the function");

  const LaurentPoly g = g_in_variable(spec.g, v);
  const LaurentPoly f = reciprocal_conjugate(g, spec.k, spec.lambda);

  // Clear negative exponents of v by a monomial factor; the measure is
  // unchanged, and the substitution below needs plain polynomials in v.
  auto clear_neg = [&](const LaurentPoly& q) {
    if (!q.uses(v)) return q;
    const std::int64_t mn = q.min_exponent_in(v);
    if (mn >= 0) return q;
    return q * LaurentPoly::monomial({v}, {-mn}, GaussianRational(1));
  };
  const LaurentPoly num = clear_neg(p.num());
  const LaurentPoly den = clear_neg(p.den());

  TransformResult out;
  const RationalFn cleared(num, den);
  out.p_tilde = substitute_rational(cleared, v, f, g);
  out.cleared_numerator = out.p_tilde.num();
  out.denominator_power = num.uses(v) ? num.degree_in(v) : 0;
  out.correction = out.denominator_power == 0
                       ? 0.0
                       : static_cast<double>(out.denominator_power) *
                             jensen_measure_1d(g);
  return out;
}

InvarianceReport verify_invariance(const RationalFn& p, const TransformSpec& spec,
                                   const QuadConfig& cfg) {
  InvarianceReport rep;
  rep.transform = apply_transform(p, spec);
  rep.lhs = measure(p, cfg);

  QuadConfig cfg2 = cfg;
  cfg2.seed = mix_seed(cfg.seed);
  if (p.is_polynomial()) {
    // m(p_tilde) = m(cleared_numerator) - l * m(g) exactly, so measure only
    // the polynomial part and apply the root-based correction.
    MeasureResult mr = measure(rep.transform.cleared_numerator, cfg2);
    rep.rhs_value = mr.value - rep.transform.correction;
    rep.rhs_stderr = mr.stderr_est;
  } else {
    MeasureResult mr = measure(rep.transform.p_tilde, cfg2);
    rep.rhs_value = mr.value;
    rep.rhs_stderr = mr.stderr_est;
  }
  rep.difference = std::abs(rep.lhs.value - rep.rhs_value);
  rep.tolerance = std::max(3.0 * (rep.lhs.stderr_est + rep.rhs_stderr), 1e-9);
  rep.pass = rep.difference <= rep.tolerance;
  return rep;
}

RationalFn build_family(Family family, int m,
                        const std::map<std::string, TransformSpec>& specs) {
  if (m < 1) throw std::invalid_argument("family index m must be at least 1");
  if (m > 40) throw std::invalid_argument("family index m too large");
  for (const auto& [key, unused] : specs) {
    bool known = false;
    for (int i = 1; i <= m && !known; ++i)
      known = key == "x" + std::to_string(i);
    if (!known)
      throw std::invalid_argument("family substitution names unknown variable '" +
                                  key + "'");
  }

  const GaussianRational one(1);
  LaurentPoly prod_num = LaurentPoly::constant(one);
  LaurentPoly prod_den = LaurentPoly::constant(one);
  for (int i = 1; i <= m; ++i) {
    const std::string xi = "x" + std::to_string(i);
    const LaurentPoly var = LaurentPoly::variable(xi);
    LaurentPoly fn, fd;
    auto it = specs.find(xi);
    if (it == specs.end()) {
      fn = LaurentPoly::constant(one) - var;
      fd = LaurentPoly::constant(one) + var;
    } else {
      TransformSpec s = it->second;
      s.variable = xi;
      ValidationReport vr = validate_spec(s);
      if (!vr.valid) throw SpecError(join_codes(vr));
      const LaurentPoly g = g_in_variable(s.g, xi);
      const LaurentPoly f = reciprocal_conjugate(g, s.k, s.lambda);
      fn = f - g;
      fd = f + g;
      const GaussianRational inv(Rational(1) / signed_content(fd));
      fn = fn.scaled(inv);
      fd = fd.scaled(inv);
    }
    prod_num *= fn;
    prod_den *= fd;
  }

  const LaurentPoly x = LaurentPoly::variable("x");
  const LaurentPoly y = LaurentPoly::variable("y");
  const LaurentPoly z = LaurentPoly::variable("z");
  LaurentPoly num;
  switch (family) {
    case Family::R:
      num = z * prod_den + prod_num;
      break;
    case Family::S:
      num = (LaurentPoly::constant(one) + x) * z * prod_den +
            prod_num * (LaurentPoly::constant(one) + y);
      break;
    case Family::T:
      num = prod_den + prod_num * x + (prod_den - prod_num) * y;
      break;
  }
  return RationalFn(std::move(num), std::move(prod_den));
}

std::pair<LaurentPoly, LaurentPoly> reciprocal_pair(const LaurentPoly& F) {
  if (F.is_zero())
    throw std::invalid_argument("reciprocal pair of the zero polynomial");
  const auto& vars = F.variables();
  std::vector<std::int64_t> degs(vars.size());
  for (std::size_t i = 0; i < vars.size(); ++i) degs[i] = F.degree_in(vars[i]);
  LaurentPoly star;
  for (const auto& [exps, coeff] : F.terms()) {
    ExponentVec ne(exps.size());
    for (std::size_t i = 0; i < exps.size(); ++i) ne[i] = degs[i] - exps[i];
    star += LaurentPoly::monomial(vars, ne, coeff.conj());
  }
  return {F, star};
}

std::vector<IdentityRecord> identity_catalog() {
  using S = IdentityStatus;
  std::vector<IdentityRecord> out;
  auto add = [&out](const char* key, const char* text, const char* rhs_key,
                    S status, const char* provenance) {
    out.push_back({key, text, parse(text), named_constant(rhs_key), status,
                   provenance});
  };

  add("smyth2", "x+y+1", "smyth2", S::proven, "base identity");
  add("smyth3", "x+y+z+1", "smyth3", S::proven, "base identity");
  add("condon", "x+1+(x-1)*(y+z)", "condon", S::proven, "base identity");
  add("l21", "1+(x-1)*y+(x+1)*z", "l21_conjecture_rhs", S::conjectural,
      "base identity (numerically verified only)");
  add("eq2", "x^2+x+1+(x^2-1)*(y+z)", "condon", S::proven,
      "condon under g = x+2, k = 2, lambda = 1");
  add("eq4", "x^4-x^3+x^2-x+1+(x^4-x^3+x-1)*(y+z)", "condon", S::proven,
      "condon under g = x^2-2x+2, k = 4, lambda = 1");
  add("eq5", "x^5+x^4+x+1+(x^5-1)*(y+z)", "condon", S::proven,
      "condon under g = x^4+x+2, k = 5, lambda = 1");
  add("zeta5_93", "(x^2+x+1)*(1+w)*(1+u)*z+(x^2-1)*(1-w)*(1+y)", "zeta5_93",
      S::proven, "S_2 family with x1 under g = x+2, k = 2, lambda = 1");
  add("zeta5_93a", "(x^4-x^3+x^2-x+1)*(1+w)*(1+u)*z+(x^4-x^3+x-1)*(1-w)*(1+y)",
      "zeta5_93", S::proven,
      "S_2 family with x1 under g = x^2-2x+2, k = 4, lambda = 1");
  add("zeta5_93b", "(x^5+x^4+x+1)*(1+w)*(1+u)*z+(x^5-1)*(1-w)*(1+y)",
      "zeta5_93", S::proven,
      "S_2 family with x1 under g = x^4+x+2, k = 5, lambda = 1");
  add("l21_2", "(x+2)/2+(x^2+x+1)*y+(x^2-1)*z", "l21_conjecture_rhs",
      S::conjectural, "l21 under g = x+2, k = 2, lambda = 1");
  add("l21_3", "(x^2-2*x+2)/2+(x^4-x^3+x^2-x+1)*y+(x^4-x^3+x-1)*z",
      "l21_conjecture_rhs", S::conjectural,
      "l21 under g = x^2-2x+2, k = 4, lambda = 1");
  add("l21_4", "(x^4+x+2)/2+(x^5+x^4+x+1)*y+(x^5-1)*z", "l21_conjecture_rhs",
      S::conjectural, "l21 under g = x^4+x+2, k = 5, lambda = 1");
  return out;
}

}  // namespace mahler
