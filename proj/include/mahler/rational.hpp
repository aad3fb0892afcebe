#ifndef MAHLER_RATIONAL_HPP
#define MAHLER_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace mahler {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Round an exact rational to binary64. Values are scaled through their top
// 63 bits so numerators/denominators far outside double range cannot
// overflow before the final ldexp.
double to_double(const Rational& q);

Integer binomial_integer(unsigned n, unsigned k);

/// Exact complex number a + b*i with rational a, b.
struct GaussianRational {
  Rational re;
  Rational im;

  GaussianRational() = default;
  GaussianRational(Rational r) : re(std::move(r)) {}
  GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
  GaussianRational(long r) : re(r) {}
  GaussianRational(long r, long i) : re(r), im(i) {}

  bool is_zero() const { return re == 0 && im == 0; }
  bool is_real() const { return im == 0; }
  bool is_one() const { return re == 1 && im == 0; }

  GaussianRational conj() const { return {re, -im}; }
  Rational norm2() const { return re * re + im * im; }

  GaussianRational operator-() const { return {-re, -im}; }

  GaussianRational& operator+=(const GaussianRational& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  GaussianRational& operator-=(const GaussianRational& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  GaussianRational& operator*=(const GaussianRational& o) {
    Rational r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = std::move(r);
    return *this;
  }

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re == b.re && a.im == b.im;
  }

  GaussianRational inverse() const {
    if (is_zero()) throw std::domain_error("GaussianRational: division by zero");
    Rational n = norm2();
    return {re / n, -im / n};
  }
  friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
    return a * b.inverse();
  }

  std::complex<double> to_complex() const { return {to_double(re), to_double(im)}; }
};

/// A Gaussian rational constrained to the unit circle (|v| = 1, checked exactly).
class UnitComplex {
 public:
  UnitComplex() : value_(1) {}
  explicit UnitComplex(GaussianRational v) : value_(std::move(v)) {
    if (value_.norm2() != 1)
      throw std::invalid_argument("UnitComplex: |value| != 1 in exact arithmetic");
  }

  const GaussianRational& value() const { return value_; }
  UnitComplex conj() const { return UnitComplex(value_.conj()); }
  std::complex<double> to_complex() const { return value_.to_complex(); }

  // zeta^e for any integer e; the inverse of a unit Gaussian rational is its
  // conjugate, so negative powers stay exact.
  GaussianRational pow(std::int64_t e) const;

  friend bool operator==(const UnitComplex& a, const UnitComplex& b) {
    return a.value_ == b.value_;
  }

 private:
  GaussianRational value_;
};

}  // namespace mahler

#endif
