#pragma once
// Scalar types shared by the module and connection code: exact rationals,
// complex doubles, and first-order dual numbers for exact directional
// derivatives.

#include <gmpxx.h>

#include <cmath>
#include <complex>
#include <string>

namespace framedrep {

using Rational = mpq_class;
using Complex = std::complex<double>;

// value + slope * eps with eps^2 = 0.
template <class T>
struct Dual {
  T value{};
  T slope{};

  Dual() = default;
  Dual(T v) : value(std::move(v)), slope() {}  // NOLINT(google-explicit-constructor)
  Dual(T v, T s) : value(std::move(v)), slope(std::move(s)) {}

  Dual& operator+=(const Dual& o) {
    value += o.value;
    slope += o.slope;
    return *this;
  }
  Dual& operator-=(const Dual& o) {
    value -= o.value;
    slope -= o.slope;
    return *this;
  }
  Dual& operator*=(const Dual& o) {
    slope = slope * o.value + value * o.slope;
    value *= o.value;
    return *this;
  }
  Dual& operator/=(const Dual& o) {
    slope = (slope * o.value - value * o.slope) / (o.value * o.value);
    value /= o.value;
    return *this;
  }
  friend Dual operator+(Dual a, const Dual& b) { return a += b; }
  friend Dual operator-(Dual a, const Dual& b) { return a -= b; }
  friend Dual operator*(Dual a, const Dual& b) { return a *= b; }
  friend Dual operator/(Dual a, const Dual& b) { return a /= b; }
  friend Dual operator-(const Dual& a) { return Dual(-a.value, -a.slope); }
  friend bool operator==(const Dual& a, const Dual& b) { return a.value == b.value && a.slope == b.slope; }
};

using DualComplex = Dual<Complex>;

template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  static constexpr bool exact = true;
  static Rational from_ratio(long num, long den) {
    Rational r(num, den);
    r.canonicalize();
    return r;
  }
  static bool is_zero(const Rational& x) { return sgn(x) == 0; }
  static double magnitude(const Rational& x) { return std::abs(x.get_d()); }
  static Complex to_complex(const Rational& x) { return {x.get_d(), 0.0}; }
  static std::string to_string(const Rational& x) { return x.get_str(); }
};

template <>
struct ScalarTraits<Complex> {
  static constexpr bool exact = false;
  static Complex from_ratio(long num, long den) { return {static_cast<double>(num) / static_cast<double>(den), 0.0}; }
  static bool is_zero(const Complex& x) { return x == Complex(0.0); }
  static double magnitude(const Complex& x) { return std::abs(x); }
  static Complex to_complex(const Complex& x) { return x; }
  static std::string to_string(const Complex& x) {
    return std::to_string(x.real()) + (x.imag() < 0 ? "" : "+") + std::to_string(x.imag()) + "i";
  }
};

template <>
struct ScalarTraits<DualComplex> {
  static constexpr bool exact = false;
  static DualComplex from_ratio(long num, long den) { return DualComplex(ScalarTraits<Complex>::from_ratio(num, den)); }
  static bool is_zero(const DualComplex& x) { return x.value == Complex(0.0) && x.slope == Complex(0.0); }
  static double magnitude(const DualComplex& x) { return std::abs(x.value); }
  static Complex to_complex(const DualComplex& x) { return x.value; }
  static std::string to_string(const DualComplex& x) { return ScalarTraits<Complex>::to_string(x.value); }
};

template <class T>
T from_ratio(long num, long den = 1) {
  return ScalarTraits<T>::from_ratio(num, den);
}

template <class T>
bool is_zero(const T& x) {
  return ScalarTraits<T>::is_zero(x);
}

}  // namespace framedrep
