#include "mahler/special.hpp"

#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace mahler {

namespace {

constexpr double kPi = std::numbers::pi;

Integer factorial_integer(int n) {
  Integer r = 1;
  for (int j = 2; j <= n; ++j) r *= j;
  return r;
}

// Sum_{k>=0} (-1)^k a(k) by the Cohen-Rodriguez Villegas-Zagier d-transform;
// error ~ (3+sqrt 8)^(-n).
template <typename F>
double alternating_sum(F a, int n = 48) {
  double d = std::pow(3.0 + 2.0 * std::numbers::sqrt2, n);
  d = (d + 1.0 / d) / 2.0;
  double b = -1.0, c = -d, s = 0.0;
  for (int k = 0; k < n; ++k) {
    c = b - c;
    s += c * a(k);
    b *= (k + n) * (k - n) / ((k + 0.5) * (k + 1.0));
  }
  return s / d;
}

// Hurwitz zeta(s, a) for integer s >= 2, 0 < a <= 1, by Euler-Maclaurin with
// shift M = 15 and 20 correction terms.
double hurwitz_zeta(int s, double a) {
  constexpr int kShift = 15;
  constexpr int kTerms = 20;
  double acc = 0.0;
  for (int k = 0; k < kShift; ++k) acc += std::pow(k + a, -s);
  double x = kShift + a;
  acc += std::pow(x, 1.0 - s) / (s - 1.0);
  acc += 0.5 * std::pow(x, -s);
  // sum_j B_2j/(2j)! * (s)_(2j-1) * x^(-s-2j+1)
  double poch = s;                      // (s)_1
  double xpow = std::pow(x, -s - 1.0);  // x^(-s-1)
  for (int j = 1; j <= kTerms; ++j) {
    double b2j = to_double(bernoulli(2 * j));
    double fact = to_double(Rational(factorial_integer(2 * j)));
    acc += b2j / fact * poch * xpow;
    poch *= (s + 2.0 * j - 1.0) * (s + 2.0 * j);
    xpow /= x * x;
  }
  return acc;
}

}  // namespace

Rational bernoulli(int n) {
  if (n < 0) throw std::invalid_argument("bernoulli: negative index");
  if (n > 200) throw std::invalid_argument("bernoulli: index above 200");
  static std::mutex mu;
  static std::vector<Rational> table;
  std::lock_guard<std::mutex> lock(mu);
  if (table.empty()) table = {Rational(1), Rational(-1, 2)};
  while (static_cast<int>(table.size()) <= n) {
    int m = static_cast<int>(table.size());
    // sum_{k=0}^{m} C(m+1,k) B_k = 0
    Rational s = 0;
    for (int k = 0; k < m; ++k) s += Rational(binomial_integer(m + 1, k)) * table[k];
    table.push_back(-s / Rational(m + 1));
  }
  return table[n];
}

double zeta(int s) {
  if (s < 2) throw std::invalid_argument("zeta: s must be >= 2");
  if (s % 2 == 0) {
    // zeta(2n) = (2 pi)^(2n) |B_2n| / (2 (2n)!)
    double b = std::abs(to_double(bernoulli(s)));
    return std::pow(2.0 * kPi, s) * b /
           (2.0 * to_double(Rational(factorial_integer(s))));
  }
  double eta = alternating_sum([s](int k) { return std::pow(k + 1.0, -s); });
  return eta / (1.0 - std::pow(2.0, 1.0 - s));
}

double dirichlet_L(Character chi, int s) {
  if (s < 2) throw std::invalid_argument("dirichlet_L: s must be >= 2");
  if (chi == Character::chi_m4)
    return alternating_sum([s](int k) { return std::pow(2.0 * k + 1.0, -s); });
  // L(chi_-3, s) = 3^(-s) (zeta(s, 1/3) - zeta(s, 2/3))
  return std::pow(3.0, -s) * (hurwitz_zeta(s, 1.0 / 3.0) - hurwitz_zeta(s, 2.0 / 3.0));
}

SymmetricArgs even_squares(int n) {
  SymmetricArgs a;
  for (int j = 1; j < n; ++j) a.push_back(Integer(2 * j) * (2 * j));
  return a;
}

SymmetricArgs odd_squares(int n) {
  SymmetricArgs a;
  for (int j = 1; j <= n; ++j) a.push_back(Integer(2 * j - 1) * (2 * j - 1));
  return a;
}

Integer elem_sym(int l, const SymmetricArgs& args) {
  if (l < 0) throw std::invalid_argument("elem_sym: negative index");
  if (l == 0) return 1;
  if (l > static_cast<int>(args.size())) return 0;
  std::vector<Integer> e(static_cast<std::size_t>(l) + 1, 0);
  e[0] = 1;
  for (const auto& a : args)
    for (int j = std::min<int>(l, static_cast<int>(args.size())); j > 0; --j)
      e[j] += a * e[j - 1];
  return e[l];
}

namespace {

double binom_d(int n, int k) { return to_double(Rational(binomial_integer(n, k))); }
double fact_d(int n) { return to_double(Rational(factorial_integer(n))); }
double bern_d(int n) { return to_double(bernoulli(n)); }

double coeff_A(int h) {
  return fact_d(2 * h) * (1.0 - std::pow(2.0, -(2 * h + 1))) * zeta(2 * h + 1);
}

double coeff_B(int h) { return fact_d(2 * h + 1) * dirichlet_L(Character::chi_m4, 2 * h + 2); }

double coeff_C(int h) {
  double s = 0.0;
  for (int l = 1; l <= h; ++l) {
    double sign = ((h - l) % 2 == 0) ? 1.0 : -1.0;
    s += binom_d(2 * h, 2 * l) * sign / (4.0 * h) * bern_d(2 * (h - l)) *
         std::pow(kPi, 2 * h - 2 * l) * fact_d(2 * l + 2) *
         (1.0 - std::pow(2.0, -(2 * l + 3))) * zeta(2 * l + 3);
  }
  return s;
}

double coeff_D(int h) {
  double s = 0.0;
  for (int l = 0; l <= h; ++l) {
    double sign = ((h - l) % 2 == 0) ? 1.0 : -1.0;
    s += binom_d(2 * h + 1, 2 * l + 1) * sign / (2.0 * (2 * h + 1)) * bern_d(2 * (h - l)) *
         std::pow(kPi, 2 * h - 2 * l) * fact_d(2 * l + 3) *
         dirichlet_L(Character::chi_m4, 2 * l + 4);
  }
  return s;
}

double coeff_E(int h) {
  double s = fact_d(2 * h) / 2.0 * (1.0 - std::pow(2.0, -(2 * h + 1))) * zeta(2 * h + 1);
  for (int l = 1; l <= h; ++l) {
    double sign = ((h - l) % 2 == 0) ? -1.0 : 1.0;  // (-1)^(h-l+1)
    s += (std::pow(2.0, 2 * (h - l) - 1) - 1.0) * binom_d(2 * h, 2 * l) * sign / (2.0 * h) *
         bern_d(2 * (h - l)) * std::pow(kPi, 2 * h - 2 * l) * fact_d(2 * l) *
         (1.0 - std::pow(2.0, -(2 * l + 1))) * zeta(2 * l + 1);
  }
  return s;
}

double coeff_F(int h, int n) {
  double s = fact_d(2 * h + 2) / 2.0 * (1.0 - std::pow(2.0, -(2 * h + 3))) * zeta(2 * h + 3);
  s += kPi * kPi * n * n / 2.0 * fact_d(2 * h) * (1.0 - std::pow(2.0, -(2 * h + 1))) *
       zeta(2 * h + 1);
  double t = 0.0;
  for (int l = 1; l <= h; ++l) {
    double sign = ((h - l) % 2 == 0) ? -1.0 : 1.0;  // (-1)^(h-l+1)
    t += (std::pow(2.0, 2 * (h - l) - 1) - 1.0) * binom_d(2 * h, 2 * l) * sign / (4.0 * h) *
         bern_d(2 * (h - l)) * std::pow(kPi, 2 * h + 2 - 2 * l) * fact_d(2 * l) *
         (1.0 - std::pow(2.0, -(2 * l + 1))) * zeta(2 * l + 1);
  }
  return s + n * (2.0 * n + 1.0) * t;
}

}  // namespace

double coefficient(CoeffKind kind, int h, int n) {
  switch (kind) {
    case CoeffKind::A:
      if (h < 1) throw std::invalid_argument("coefficient A: h must be >= 1");
      return coeff_A(h);
    case CoeffKind::B:
      if (h < 0) throw std::invalid_argument("coefficient B: h must be >= 0");
      return coeff_B(h);
    case CoeffKind::C:
      if (h < 1) throw std::invalid_argument("coefficient C: h must be >= 1");
      return coeff_C(h);
    case CoeffKind::D:
      if (h < 0) throw std::invalid_argument("coefficient D: h must be >= 0");
      return coeff_D(h);
    case CoeffKind::E:
      if (h < 1) throw std::invalid_argument("coefficient E: h must be >= 1");
      return coeff_E(h);
    case CoeffKind::F:
      if (h < 1) throw std::invalid_argument("coefficient F: h must be >= 1");
      if (n < 0) throw std::invalid_argument("coefficient F: n must be >= 0");
      return coeff_F(h, n);
  }
  throw std::invalid_argument("coefficient: unknown kind");
}

double closed_form(Family family, int m) {
  if (m < 1 || m > 20) throw std::invalid_argument("closed_form: m out of range [1,20]");
  const double two_over_pi = 2.0 / kPi;
  double s = 0.0;
  if (family == Family::R) {
    if (m % 2 == 0) {
      int n = m / 2;
      auto args = even_squares(n);
      for (int h = 1; h <= n; ++h)
        s += to_double(Rational(elem_sym(n - h, args), factorial_integer(2 * n - 1))) *
             std::pow(two_over_pi, 2 * h) * coeff_A(h);
    } else {
      int n = (m - 1) / 2;
      auto args = odd_squares(n);
      for (int h = 0; h <= n; ++h)
        s += to_double(Rational(elem_sym(n - h, args), factorial_integer(2 * n))) *
             std::pow(two_over_pi, 2 * h + 1) * coeff_B(h);
    }
    return s;
  }
  if (family == Family::S) {
    if (m % 2 == 0) {
      int n = m / 2;
      auto args = even_squares(n);
      for (int h = 1; h <= n; ++h)
        s += to_double(Rational(elem_sym(n - h, args), factorial_integer(2 * n - 1))) *
             std::pow(two_over_pi, 2 * h + 2) * coeff_C(h);
    } else {
      int n = (m - 1) / 2;
      auto args = odd_squares(n);
      for (int h = 0; h <= n; ++h)
        s += to_double(Rational(elem_sym(n - h, args), factorial_integer(2 * n))) *
             std::pow(two_over_pi, 2 * h + 3) * coeff_D(h);
    }
    return s;
  }
  // Family T
  s = std::log(2.0) / 2.0;
  if (m % 2 == 0) {
    int n = m / 2;
    auto args = even_squares(n);
    for (int h = 1; h <= n; ++h)
      s += to_double(Rational(elem_sym(n - h, args), factorial_integer(2 * n - 1))) *
           std::pow(two_over_pi, 2 * h) * coeff_E(h);
  } else {
    // Transcribed as displayed: the sum runs h = 1..n with the even-squares
    // arguments and (2n+1)! denominator, so m = 1 (n = 0) is (log 2)/2 alone.
    int n = (m - 1) / 2;
    auto args = even_squares(n);
    for (int h = 1; h <= n; ++h)
      s += to_double(Rational(elem_sym(n - h, args), factorial_integer(2 * n + 1))) *
           std::pow(two_over_pi, 2 * h + 2) * coeff_F(h, n);
  }
  return s;
}

NamedConstant named_constant(const std::string& key, double user_value) {
  if (key == "smyth2")
    return {key, 3.0 * std::sqrt(3.0) / (4.0 * kPi) * dirichlet_L(Character::chi_m3, 2),
            "3*sqrt(3)/(4*pi) * L(chi_-3, 2)"};
  if (key == "smyth3")
    return {key, 7.0 * zeta(3) / (2.0 * kPi * kPi), "7*zeta(3)/(2*pi^2)"};
  if (key == "condon")
    return {key, 28.0 * zeta(3) / (5.0 * kPi * kPi), "28*zeta(3)/(5*pi^2)"};
  if (key == "zeta5_93")
    return {key, 93.0 * zeta(5) / std::pow(kPi, 4), "93*zeta(5)/pi^4"};
  if (key == "l21_conjecture_rhs")
    return {key, user_value, "5/4 * L'(E_21a1, -1), externally computed", true};
  throw std::invalid_argument("named_constant: unknown key " + key);
}

}  // namespace mahler
