#pragma once
// Exact arithmetic over Z[q^{+-1}, t^{+-1}] and its fraction field.

#include <gmpxx.h>

#include <complex>
#include <compare>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace framedrep {

using BigInt = mpz_class;
using Complex = std::complex<double>;

struct Monomial {
  int q = 0;
  int t = 0;
  auto operator<=>(const Monomial&) const = default;
};

// Sparse Laurent polynomial with integer coefficients. Terms are kept in
// lexicographic order on (e_q, e_t); zero coefficients are never stored.
class LaurentPoly2 {
 public:
  using TermMap = std::map<Monomial, BigInt>;

  LaurentPoly2() = default;
  LaurentPoly2(long constant);  // NOLINT(google-explicit-constructor)
  explicit LaurentPoly2(const BigInt& constant);

  static LaurentPoly2 monomial(const BigInt& coeff, int eq, int et);
  static LaurentPoly2 q(int exponent = 1) { return monomial(1, exponent, 0); }
  static LaurentPoly2 t(int exponent = 1) { return monomial(1, 0, exponent); }

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  BigInt coeff(int eq, int et) const;

  // Lex-largest monomial; requires a nonzero polynomial.
  Monomial leading_monomial() const;
  const BigInt& leading_coeff() const;

  int min_q() const;
  int max_q() const;
  int min_t() const;
  int max_t() const;
  bool t_free() const;

  LaurentPoly2 shifted(int dq, int dt) const;

  LaurentPoly2& operator+=(const LaurentPoly2& other);
  LaurentPoly2& operator-=(const LaurentPoly2& other);
  LaurentPoly2& operator*=(const LaurentPoly2& other);
  LaurentPoly2 operator-() const;

  friend LaurentPoly2 operator+(LaurentPoly2 a, const LaurentPoly2& b) { return a += b; }
  friend LaurentPoly2 operator-(LaurentPoly2 a, const LaurentPoly2& b) { return a -= b; }
  friend LaurentPoly2 operator*(const LaurentPoly2& a, const LaurentPoly2& b);
  friend bool operator==(const LaurentPoly2& a, const LaurentPoly2& b) { return a.terms_ == b.terms_; }

  std::string to_string() const;

 private:
  void add_term(const Monomial& m, const BigInt& c);
  TermMap terms_;
};

// Exact quotient a / b in the Laurent ring, or nullopt when b does not divide a.
std::optional<LaurentPoly2> exact_divide(const LaurentPoly2& a, const LaurentPoly2& b);

// gcd of the integer coefficients (nonnegative).
BigInt content(const LaurentPoly2& p);

// gcd over Z[q,t] of the monomial-free parts of a and b. The result is
// primitive, has no monomial factor and a positive lex-leading coefficient.
// gcd(0, 0) is 0.
LaurentPoly2 polynomial_gcd(const LaurentPoly2& a, const LaurentPoly2& b);

// [n]_{-t} = ((-t)^n - 1)/((-t) - 1), [n]_{-t}! and the (-t)-binomial.
LaurentPoly2 qt_integer(int n);
LaurentPoly2 qt_factorial(int n);
LaurentPoly2 qt_binomial(int k, int i);

Complex evaluate(const LaurentPoly2& p, Complex q, Complex t);

// Element of Q(q,t) kept in canonical form: numerator and denominator
// coprime over Q[q,t], the denominator monomial-free with positive lex-leading
// coefficient, and no common integer content.
class RationalQT {
 public:
  RationalQT() : num_(0), den_(1) {}
  RationalQT(const LaurentPoly2& p);  // NOLINT(google-explicit-constructor)
  RationalQT(const LaurentPoly2& num, const LaurentPoly2& den);

  const LaurentPoly2& numerator() const { return num_; }
  const LaurentPoly2& denominator() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_ == LaurentPoly2(1); }

  friend RationalQT operator+(const RationalQT& a, const RationalQT& b);
  friend RationalQT operator-(const RationalQT& a, const RationalQT& b);
  friend RationalQT operator*(const RationalQT& a, const RationalQT& b);
  friend RationalQT operator/(const RationalQT& a, const RationalQT& b);
  friend bool operator==(const RationalQT& a, const RationalQT& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  std::string to_string() const;

 private:
  void normalize();
  LaurentPoly2 num_;
  LaurentPoly2 den_;
};

Complex evaluate(const RationalQT& r, Complex q, Complex t);

// Dense matrix over the Laurent ring. Entries are stored row-major.
class PolyMatrix {
 public:
  PolyMatrix() = default;
  PolyMatrix(std::size_t rows, std::size_t cols);
  static PolyMatrix identity(std::size_t dim);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  LaurentPoly2& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const LaurentPoly2& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  bool is_zero() const;
  PolyMatrix block(std::size_t row0, std::size_t col0, std::size_t rows, std::size_t cols) const;

  friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b);
  friend PolyMatrix operator+(const PolyMatrix& a, const PolyMatrix& b);
  friend PolyMatrix operator-(const PolyMatrix& a, const PolyMatrix& b);
  friend bool operator==(const PolyMatrix& a, const PolyMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<LaurentPoly2> data_;
};

// Fraction-free Bareiss elimination; every division is exact in the ring.
LaurentPoly2 determinant(const PolyMatrix& m);

std::vector<std::vector<Complex>> evaluate(const PolyMatrix& m, Complex q, Complex t);

nlohmann::json to_json(const LaurentPoly2& p);
LaurentPoly2 laurent_from_json(const nlohmann::json& j);
nlohmann::json to_json(const RationalQT& r);
nlohmann::json to_json(const PolyMatrix& m);

}  // namespace framedrep
