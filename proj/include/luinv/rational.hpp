#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace luinv {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input (files, literals, flags). The CLI maps it to exit code 2.
class ParseError : public Error {
 public:
  using Error::Error;
};

using Rational = mpq_class;

/// p/q in lowest terms. GMP requires canonical operands for arithmetic.
inline Rational frac(long p, long q) {
  Rational r(p, q);
  r.canonicalize();
  return r;
}

/// Parses "p", "-p" or "p/q" (optionally signed) into a canonical rational.
Rational parse_rational(std::string_view text);

/// Always "p/q", including integers ("3/1"), as used by the basis file format.
std::string to_fraction_string(const Rational& q);

/// "p" for integers, "p/q" otherwise.
std::string to_short_string(const Rational& q);

double to_double(const Rational& q);

/// Exact complex number with rational real and imaginary parts.
struct ComplexRational {
  Rational re{0};
  Rational im{0};

  ComplexRational() = default;
  ComplexRational(Rational r) : re(std::move(r)) {}  // NOLINT: implicit by design of the scalar traits
  ComplexRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
  ComplexRational(long r) : re(r) {}  // NOLINT
  ComplexRational(int r) : re(r) {}   // NOLINT

  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }

  ComplexRational& operator+=(const ComplexRational& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  ComplexRational& operator-=(const ComplexRational& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  ComplexRational& operator*=(const ComplexRational& o) {
    Rational r = re * o.re - im * o.im;
    Rational i = re * o.im + im * o.re;
    re = std::move(r);
    im = std::move(i);
    return *this;
  }
  friend ComplexRational operator+(ComplexRational a, const ComplexRational& b) { return a += b; }
  friend ComplexRational operator-(ComplexRational a, const ComplexRational& b) { return a -= b; }
  friend ComplexRational operator*(ComplexRational a, const ComplexRational& b) { return a *= b; }
  friend ComplexRational operator-(const ComplexRational& a) { return {-a.re, -a.im}; }
  friend bool operator==(const ComplexRational& a, const ComplexRational& b) {
    return a.re == b.re && a.im == b.im;
  }
};

inline ComplexRational conj(const ComplexRational& z) { return {z.re, -z.im}; }
inline Rational abs2(const ComplexRational& z) { return z.re * z.re + z.im * z.im; }
inline std::complex<double> to_complex(const ComplexRational& z) {
  return {to_double(z.re), to_double(z.im)};
}

/// Uniform access to the two amplitude fields: complex doubles for user data,
/// complex rationals for exact evaluation.
template <class Amp>
struct AmplitudeTraits;

template <>
struct AmplitudeTraits<std::complex<double>> {
  using Amplitude = std::complex<double>;
  using Real = double;
  static Amplitude from_rational(const Rational& q) { return {q.get_d(), 0.0}; }
  static Real real_from_rational(const Rational& q) { return q.get_d(); }
  static Amplitude conj(const Amplitude& a) { return std::conj(a); }
  static Real abs2(const Amplitude& a) { return std::norm(a); }
  static bool is_zero(const Amplitude& a) { return a == Amplitude{}; }
};

template <>
struct AmplitudeTraits<ComplexRational> {
  using Amplitude = ComplexRational;
  using Real = Rational;
  static Amplitude from_rational(const Rational& q) { return {q, Rational(0)}; }
  static Real real_from_rational(const Rational& q) { return q; }
  static Amplitude conj(const Amplitude& a) { return luinv::conj(a); }
  static Real abs2(const Amplitude& a) { return luinv::abs2(a); }
  static bool is_zero(const Amplitude& a) { return a.is_zero(); }
};

template <class Amp>
using RealOf = typename AmplitudeTraits<Amp>::Real;

}  // namespace luinv
