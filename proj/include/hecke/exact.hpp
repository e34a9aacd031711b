#pragma once

#include <complex>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace hecke {

/// Exact rational number, always stored in lowest terms.
using Rational = mpq_class;
using Integer = mpz_class;

/// num/den in lowest terms; throws std::invalid_argument on a zero denominator.
Rational make_rational(const Integer& num, const Integer& den);

/// Parses "p", "-p" or "p/q"; throws std::invalid_argument otherwise.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);
double to_double(const Rational& q);

/// Exact complex number with rational real and imaginary parts.
struct ExactComplex {
  Rational re{0};
  Rational im{0};

  ExactComplex() = default;
  ExactComplex(Rational r) : re(std::move(r)) {}  // NOLINT(implicit)
  ExactComplex(long r) : re(r) {}                  // NOLINT(implicit)
  ExactComplex(int r) : re(r) {}                   // NOLINT(implicit)
  ExactComplex(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
  bool is_real() const { return sgn(im) == 0; }

  ExactComplex& operator+=(const ExactComplex& o) {
    re += o.re;
    if (sgn(o.im) != 0) im += o.im;
    return *this;
  }
  ExactComplex& operator-=(const ExactComplex& o) {
    re -= o.re;
    if (sgn(o.im) != 0) im -= o.im;
    return *this;
  }
  friend ExactComplex operator+(ExactComplex a, const ExactComplex& b) { return a += b; }
  friend ExactComplex operator-(ExactComplex a, const ExactComplex& b) { return a -= b; }
  friend ExactComplex operator-(const ExactComplex& a) { return {-a.re, -a.im}; }
  friend ExactComplex operator*(const ExactComplex& a, const ExactComplex& b) {
    if (a.is_real() && b.is_real()) return ExactComplex(Rational(a.re * b.re));
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  ExactComplex& operator*=(const ExactComplex& o) { return *this = *this * o; }
  friend bool operator==(const ExactComplex& a, const ExactComplex& b) {
    return a.re == b.re && a.im == b.im;
  }

  /// Squared modulus, exact.
  Rational norm() const { return re * re + im * im; }
  ExactComplex conj() const { return {re, -im}; }
  std::complex<double> to_complex() const { return {to_double(re), to_double(im)}; }
};

std::string to_string(const ExactComplex& z);

/// Uniform access to the two coefficient modes (exact complex rationals, float complex).
template <class Scalar>
struct ScalarTraits;

template <>
struct ScalarTraits<ExactComplex> {
  using Real = Rational;
  static constexpr bool exact = true;
  static bool is_zero(const ExactComplex& z) { return z.is_zero(); }
  static ExactComplex conj(const ExactComplex& z) { return z.conj(); }
  static Rational norm(const ExactComplex& z) { return z.norm(); }
  static std::complex<double> to_complex(const ExactComplex& z) { return z.to_complex(); }
  static ExactComplex from_real(const Rational& r) { return ExactComplex(r); }
  static double real_to_double(const Rational& r) { return to_double(r); }
};

template <>
struct ScalarTraits<std::complex<double>> {
  using Real = double;
  static constexpr bool exact = false;
  static bool is_zero(const std::complex<double>& z) { return z == std::complex<double>{}; }
  static std::complex<double> conj(const std::complex<double>& z) { return std::conj(z); }
  static double norm(const std::complex<double>& z) { return std::norm(z); }
  static std::complex<double> to_complex(const std::complex<double>& z) { return z; }
  static std::complex<double> from_real(double r) { return {r, 0.0}; }
  static double real_to_double(double r) { return r; }
};

}  // namespace hecke
