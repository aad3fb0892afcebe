#include "mahler/roots.hpp"

#include "mahler/poly_ops.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace mahler {

namespace {

constexpr int kMaxDegree = 500;
constexpr int kMaxIterations = 1000;
constexpr double kResidualTight = 1e-10;
constexpr double kResidualRelaxed = 1e-7;
constexpr double kCircleTol = 1e-9;

// p and p' at z by Horner's rule.
void eval_poly(std::span<const std::complex<double>> c, std::complex<double> z,
               std::complex<double>* p, std::complex<double>* dp) {
  std::complex<double> v = c.back(), d = 0.0;
  for (std::size_t j = c.size() - 1; j-- > 0;) {
    d = d * z + v;
    v = v * z + c[j];
  }
  *p = v;
  if (dp) *dp = d;
}

double eval_scale(std::span<const std::complex<double>> c, double az) {
  double s = 0.0, p = 1.0;
  for (std::size_t j = 0; j < c.size(); ++j) {
    s += std::abs(c[j]) * p;
    p *= az;
  }
  return s;
}

void solve_lowdeg(std::span<const std::complex<double>> c, RootSet* out) {
  const std::size_t d = c.size() - 1;
  if (d == 1) {
    out->roots = {-c[0] / c[1]};
    return;
  }
  // Stable complex quadratic.
  std::complex<double> a = c[2], b = c[1], c0 = c[0];
  std::complex<double> disc = std::sqrt(b * b - 4.0 * a * c0);
  if (std::abs(b + disc) < std::abs(b - disc)) disc = -disc;
  std::complex<double> q = -0.5 * (b + disc);
  std::complex<double> r1 = q / a;
  std::complex<double> r2 = std::abs(q) > 0 ? c0 / q : std::complex<double>(0.0);
  out->roots = {r1, r2};
}

}  // namespace

RootSet find_roots(std::span<const std::complex<double>> coeffs) {
  // Trim near-zero leading coefficients (relative threshold) and exact-zero
  // trailing ones (roots at the origin).
  double scale = 0.0;
  for (auto& c : coeffs) scale = std::max(scale, std::abs(c));
  if (!(scale > 0.0)) throw NumericError("find_roots: zero polynomial");
  std::size_t hi = coeffs.size();
  while (hi > 1 && std::abs(coeffs[hi - 1]) <= 1e-12 * scale) --hi;
  std::size_t lo = 0;
  while (lo + 1 < hi && std::abs(coeffs[lo]) == 0.0) ++lo;

  RootSet out;
  out.zero_roots = static_cast<int>(lo);
  out.leading = coeffs[hi - 1];
  std::vector<std::complex<double>> c(coeffs.begin() + lo, coeffs.begin() + hi);
  const std::size_t d = c.size() - 1;
  if (static_cast<int>(d) > kMaxDegree)
    throw NumericError("find_roots: degree " + std::to_string(d) + " exceeds limit 500");
  if (d == 0) return out;

  if (d <= 2) {
    solve_lowdeg(c, &out);
  } else {
    // Ehrlich-Aberth from a deterministic ring at the Cauchy bound.
    double bound = 0.0;
    for (std::size_t j = 0; j + 1 < c.size(); ++j)
      bound = std::max(bound, std::abs(c[j] / c[d]));
    double radius = 1.0 + bound;
    std::vector<std::complex<double>> z(d);
    for (std::size_t i = 0; i < d; ++i) {
      double theta = 2.0 * std::numbers::pi * (static_cast<double>(i) + 0.353) /
                     static_cast<double>(d);
      z[i] = radius * std::complex<double>(std::cos(theta), std::sin(theta));
    }

    std::vector<bool> done(d, false);
    int iter = 0;
    for (; iter < kMaxIterations; ++iter) {
      double worst = 0.0;
      for (std::size_t i = 0; i < d; ++i) {
        if (done[i]) continue;
        std::complex<double> p, dp;
        eval_poly(c, z[i], &p, &dp);
        if (std::abs(p) <= 1e-18 * eval_scale(c, std::abs(z[i]))) {
          done[i] = true;
          continue;
        }
        std::complex<double> newton = (dp != 0.0) ? p / dp : std::complex<double>(0.0);
        std::complex<double> rep = 0.0;
        for (std::size_t j = 0; j < d; ++j) {
          if (j == i) continue;
          std::complex<double> diff = z[i] - z[j];
          if (std::abs(diff) < 1e-300) diff = 1e-300;
          rep += 1.0 / diff;
        }
        std::complex<double> denom = 1.0 - newton * rep;
        std::complex<double> delta = (std::abs(denom) > 1e-300) ? newton / denom : newton;
        z[i] -= delta;
        double rel = std::abs(delta) / (1.0 + std::abs(z[i]));
        worst = std::max(worst, rel);
        if (rel <= 1e-14) done[i] = true;
      }
      if (worst <= 1e-14) break;
    }
    out.iterations = iter;

    // Newton polish.
    for (auto& zi : z) {
      for (int s = 0; s < 3; ++s) {
        std::complex<double> p, dp;
        eval_poly(c, zi, &p, &dp);
        if (dp == 0.0) break;
        std::complex<double> step = p / dp;
        if (!(std::abs(step) < 1.0 + std::abs(zi))) break;  // reject wild steps
        zi -= step;
      }
    }
    out.roots = std::move(z);
  }

  double residual = 0.0;
  for (auto& zi : out.roots) {
    std::complex<double> p;
    eval_poly(c, zi, &p, nullptr);
    residual = std::max(residual, std::abs(p) / eval_scale(c, std::abs(zi)));
  }
  out.residual = residual;
  if (residual > kResidualRelaxed)
    throw NumericError("find_roots: residual " + std::to_string(residual) +
                       " above relaxed tolerance");
  out.relaxed = residual > kResidualTight;
  return out;
}

namespace {

// Double coefficients of a univariate Laurent polynomial after the
// measure-preserving monomial shift.
std::vector<std::complex<double>> univariate_coeffs(const LaurentPoly& p) {
  std::vector<std::string> used;
  for (const auto& v : p.variables())
    if (p.uses(v)) used.push_back(v);
  if (used.size() > 1)
    throw std::invalid_argument("expected a univariate polynomial");
  if (p.is_zero()) throw NumericError("zero polynomial");
  if (used.empty()) return {p.constant_value().to_complex()};

  auto [q, shift] = laurent_normalize(p);
  const std::string& var = used[0];
  int vi = q.var_index(var);
  std::vector<std::complex<double>> c(static_cast<std::size_t>(q.degree_in(var)) + 1);
  for (const auto& [e, coef] : q.terms())
    c[static_cast<std::size_t>(e[vi])] += coef.to_complex();
  return c;
}

}  // namespace

RootSet find_roots(const LaurentPoly& p) { return find_roots(univariate_coeffs(p)); }

double jensen_measure_1d(std::span<const std::complex<double>> coeffs,
                         bool* relaxed) {
  if (coeffs.size() == 1) return std::log(std::abs(coeffs[0]));
  if (coeffs.size() == 2) {
    // log max(|c1|, |c0|) without forming the ratio.
    return std::log(std::max(std::abs(coeffs[0]), std::abs(coeffs[1])));
  }
  RootSet rs = find_roots(coeffs);
  if (relaxed && rs.relaxed) *relaxed = true;
  double m = std::log(std::abs(rs.leading));
  for (auto& r : rs.roots) {
    double a = std::abs(r);
    if (a > 1.0) m += std::log(a);
  }
  return m;
}

double jensen_measure_1d(const LaurentPoly& p, bool* relaxed) {
  return jensen_measure_1d(univariate_coeffs(p), relaxed);
}

namespace {

std::vector<std::complex<double>> gamma_coeffs(const LaurentPoly& g, std::int64_t k,
                                               const UnitComplex& lambda,
                                               std::complex<double> alpha,
                                               std::complex<double> beta) {
  LaurentPoly f = reciprocal_conjugate(g, k, lambda);
  auto fc = univariate_coeffs(f);
  auto gc = univariate_coeffs(g);
  std::vector<std::complex<double>> c(static_cast<std::size_t>(k) + 1, 0.0);
  for (std::size_t j = 0; j < fc.size(); ++j) c[j] += alpha * fc[j];
  for (std::size_t j = 0; j < gc.size(); ++j) c[j] += beta * gc[j];
  return c;
}

}  // namespace

GammaClass classify_gamma(const LaurentPoly& g, std::int64_t k, const UnitComplex& lambda,
                          std::complex<double> beta) {
  // Precondition: every root of g has modulus >= 1 (up to the circle
  // tolerance); the trichotomy statement is meaningless otherwise.
  if (!g.is_constant()) {
    RootSet gr = find_roots(g);
    if (gr.zero_roots > 0)
      throw std::invalid_argument("classify_gamma: g has a root at the origin");
    for (const auto& r : gr.roots)
      if (std::abs(r) < 1.0 - kCircleTol)
        throw std::invalid_argument(
            "classify_gamma: g has a root inside the unit circle");
  }
  auto c = gamma_coeffs(g, k, lambda, 1.0, beta);
  RootSet rs = find_roots(c);
  GammaClass out;
  out.roots = rs.roots;
  for (int i = 0; i < rs.zero_roots; ++i) out.roots.push_back(0.0);
  bool any_in = false, any_out = false, any_on = false;
  double margin = HUGE_VAL;
  for (auto& r : out.roots) {
    double t = std::abs(r) - 1.0;
    margin = std::min(margin, std::abs(t));
    if (std::abs(t) <= kCircleTol)
      any_on = true;
    else if (t < 0)
      any_in = true;
    else
      any_out = true;
  }
  out.margin = margin;
  if (any_on && !any_in && !any_out)
    out.cls = CircleClass::all_on;
  else if (any_in && !any_on && !any_out)
    out.cls = CircleClass::all_inside;
  else if (any_out && !any_on && !any_in)
    out.cls = CircleClass::all_outside;
  else
    out.cls = CircleClass::mixed;
  return out;
}

AlphaBetaMeasure measure_alpha_f_plus_beta_g(const LaurentPoly& g, std::int64_t k,
                                             const UnitComplex& lambda,
                                             std::complex<double> alpha,
                                             std::complex<double> beta) {
  double closed;
  double mg = jensen_measure_1d(g);
  closed = mg + std::log(std::max(std::abs(alpha), std::abs(beta)));

  auto c = gamma_coeffs(g, k, lambda, alpha, beta);
  double direct = jensen_measure_1d(c);

  return {closed, direct, std::abs(closed - direct)};
}

}  // namespace mahler
