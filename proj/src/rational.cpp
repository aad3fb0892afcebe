#include "mahler/rational.hpp"

namespace mahler {

namespace {

// Top 63 bits of |v| as a double together with the discarded bit count.
std::pair<double, long> split_magnitude(const Integer& v) {
  using boost::multiprecision::msb;
  Integer a = v < 0 ? Integer(-v) : v;
  if (a == 0) return {0.0, 0};
  unsigned long bits = msb(a);  // index of highest set bit
  if (bits <= 62) return {a.convert_to<double>(), 0};
  long drop = static_cast<long>(bits) - 62;
  Integer top = a >> drop;
  return {top.convert_to<double>(), drop};
}

}  // namespace

double to_double(const Rational& q) {
  const Integer& num = boost::multiprecision::numerator(q);
  const Integer& den = boost::multiprecision::denominator(q);
  if (num == 0) return 0.0;
  auto [mn, en] = split_magnitude(num);
  auto [md, ed] = split_magnitude(den);
  long shift = en - ed;
  double mag;
  if (shift > 2000)
    mag = HUGE_VAL;
  else if (shift < -2000)
    mag = 0.0;
  else
    mag = std::ldexp(mn / md, static_cast<int>(shift));
  return num < 0 ? -mag : mag;
}

Integer binomial_integer(unsigned n, unsigned k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  Integer r = 1;
  for (unsigned j = 1; j <= k; ++j) {
    r *= n - k + j;
    r /= j;
  }
  return r;
}

GaussianRational UnitComplex::pow(std::int64_t e) const {
  GaussianRational base = e >= 0 ? value_ : value_.conj();
  std::uint64_t n = e >= 0 ? static_cast<std::uint64_t>(e)
                           : ~static_cast<std::uint64_t>(e) + 1;  // |e| without overflow
  GaussianRational acc{1};
  while (n) {
    if (n & 1) acc *= base;
    base *= base;
    n >>= 1;
  }
  return acc;
}

}  // namespace mahler
