#ifndef MAHLER_ROOTS_HPP
#define MAHLER_ROOTS_HPP

#include "mahler/laurent.hpp"

#include <complex>
#include <span>
#include <vector>

namespace mahler {

/// Numeric failure in a root solve or quadrature step.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RootSet {
  std::vector<std::complex<double>> roots;  // nonzero roots
  int zero_roots = 0;                       // multiplicity of the root at 0
  std::complex<double> leading;             // coefficient of the highest power
  double residual = 0.0;                    // max |p(root)| / sum_j |c_j||root|^j
  int iterations = 0;
  bool relaxed = false;  // converged only to the clustered-root tolerance (1e-7)
};

/// All complex roots of sum_j coeffs[j] x^j (ascending order, degree =
/// coeffs.size()-1 after trailing near-zero leading coefficients are
/// trimmed at relative threshold 1e-12). Simultaneous (Ehrlich-Aberth)
/// iteration from a deterministic start on the Cauchy-bound circle, with
/// Newton polishing. Degrees above 500 are rejected; residuals above 1e-7
/// raise NumericError, residuals in (1e-10, 1e-7] set `relaxed`.
RootSet find_roots(std::span<const std::complex<double>> coeffs);

/// Roots of a univariate Laurent polynomial (negative exponents first
/// cleared by the measure-preserving monomial shift).
RootSet find_roots(const LaurentPoly& p);

/// Mahler measure of a univariate polynomial from its roots:
/// log|leading| + sum over roots of max(0, log|root|). When `relaxed` is
/// given, it is set to true if the root solve met only the clustered-root
/// tolerance (it is never reset to false).
double jensen_measure_1d(std::span<const std::complex<double>> coeffs,
                         bool* relaxed = nullptr);
double jensen_measure_1d(const LaurentPoly& p, bool* relaxed = nullptr);

enum class CircleClass { all_inside, all_on, all_outside, mixed };

struct GammaClass {
  CircleClass cls;
  double margin;  // min over roots of ||root| - 1|
  std::vector<std::complex<double>> roots;
};

/// Root location of Gamma_beta = f + beta*g relative to the unit circle,
/// where f = lambda x^k conj(g)(1/x). Tolerance 1e-9 on |root| - 1 decides
/// membership on the circle. Valid for k >= deg g.
GammaClass classify_gamma(const LaurentPoly& g, std::int64_t k, const UnitComplex& lambda,
                          std::complex<double> beta);

struct AlphaBetaMeasure {
  double value;        // closed form: m(g) + log max(|alpha|, |beta|)
  double jensen_value; // the same measure recomputed from the roots of alpha*f + beta*g
  double discrepancy;  // |value - jensen_value|
};

/// m(alpha*f + beta*g) for f = lambda x^k conj(g)(1/x), which collapses to
/// m(g) + log max(|alpha|, |beta|); both the closed form and the direct
/// Jensen evaluation are returned.
AlphaBetaMeasure measure_alpha_f_plus_beta_g(const LaurentPoly& g, std::int64_t k,
                                             const UnitComplex& lambda,
                                             std::complex<double> alpha,
                                             std::complex<double> beta);

}  // namespace mahler

#endif
