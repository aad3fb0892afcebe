#ifndef MAHLER_SPECIAL_HPP
#define MAHLER_SPECIAL_HPP

#include "mahler/rational.hpp"

#include <string>
#include <vector>

namespace mahler {

/// Riemann zeta at integer s >= 2: even s through the pi^(2n) |B_2n| closed
/// form, odd s through a d-transform accelerated alternating (eta) series.
double zeta(int s);

enum class Character { chi_m3, chi_m4 };

/// L(chi_-3, s) or L(chi_-4, s) for integer s >= 2. The conductor-4 value
/// uses the accelerated alternating series over odd denominators; the
/// conductor-3 value goes through Hurwitz zeta (Euler-Maclaurin).
double dirichlet_L(Character chi, int s);

/// Exact Bernoulli number B_n (B_1 = -1/2); n <= 200.
Rational bernoulli(int n);

using SymmetricArgs = std::vector<Integer>;

/// (2^2, 4^2, ..., (2n-2)^2): n-1 entries.
SymmetricArgs even_squares(int n);
/// (1^2, 3^2, ..., (2n-1)^2): n entries.
SymmetricArgs odd_squares(int n);

/// Elementary symmetric polynomial s_l of the arguments; s_0 = 1 and
/// s_l = 0 past the argument count.
Integer elem_sym(int l, const SymmetricArgs& args);

enum class CoeffKind { A, B, C, D, E, F };

/// The six named coefficient functions of the closed-form family measures;
/// `n` participates only in kind F. A, C, E, F need h >= 1; B, D need h >= 0.
double coefficient(CoeffKind kind, int h, int n = 0);

enum class Family { R, S, T };

/// Closed-form Mahler measure of the m-th member of a family, dispatching on
/// the parity of m (1 <= m <= 20); transcribed literally from the source
/// formulas. Note: the displayed odd-T formula starts its sum at h = 1, so
/// closed_form(T, 1) yields (log 2)/2 alone; the numeric cross-check in the
/// test suite documents that this disagrees with quadrature (see README).
double closed_form(Family family, int m);

struct NamedConstant {
  std::string key;
  double value;
  std::string formula;  // human-readable description of the closed form
  bool user_supplied = false;
};

/// Catalog of named right-hand-side constants, computed at call time from
/// zeta / dirichlet_L (never stored as decimals). Keys: smyth2, smyth3,
/// condon, zeta5_93, l21_conjecture_rhs. The last one has no internal
/// formula: pass the externally computed value via `user_value`.
NamedConstant named_constant(const std::string& key, double user_value = 0.0);

}  // namespace mahler

#endif
