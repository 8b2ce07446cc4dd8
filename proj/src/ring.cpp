#include "framedrep/ring.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "framedrep/errors.hpp"

namespace framedrep {

LaurentPoly2::LaurentPoly2(long constant) {
  if (constant != 0) terms_.emplace(Monomial{0, 0}, BigInt(constant));
}

LaurentPoly2::LaurentPoly2(const BigInt& constant) {
  if (constant != 0) terms_.emplace(Monomial{0, 0}, constant);
}

LaurentPoly2 LaurentPoly2::monomial(const BigInt& coeff, int eq, int et) {
  LaurentPoly2 p;
  if (coeff != 0) p.terms_.emplace(Monomial{eq, et}, coeff);
  return p;
}

BigInt LaurentPoly2::coeff(int eq, int et) const {
  auto it = terms_.find(Monomial{eq, et});
  return it == terms_.end() ? BigInt(0) : it->second;
}

Monomial LaurentPoly2::leading_monomial() const {
  if (terms_.empty()) throw DomainError("leading monomial of the zero polynomial");
  return terms_.rbegin()->first;
}

const BigInt& LaurentPoly2::leading_coeff() const {
  if (terms_.empty()) throw DomainError("leading coefficient of the zero polynomial");
  return terms_.rbegin()->second;
}

int LaurentPoly2::min_q() const {
  return terms_.empty() ? 0 : terms_.begin()->first.q;
}

int LaurentPoly2::max_q() const {
  return terms_.empty() ? 0 : terms_.rbegin()->first.q;
}

int LaurentPoly2::min_t() const {
  int m = std::numeric_limits<int>::max();
  for (const auto& [mono, c] : terms_) m = std::min(m, mono.t);
  return terms_.empty() ? 0 : m;
}

int LaurentPoly2::max_t() const {
  int m = std::numeric_limits<int>::min();
  for (const auto& [mono, c] : terms_) m = std::max(m, mono.t);
  return terms_.empty() ? 0 : m;
}

bool LaurentPoly2::t_free() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const auto& kv) { return kv.first.t == 0; });
}

LaurentPoly2 LaurentPoly2::shifted(int dq, int dt) const {
  LaurentPoly2 out;
  for (const auto& [mono, c] : terms_) out.terms_.emplace_hint(out.terms_.end(), Monomial{mono.q + dq, mono.t + dt}, c);
  return out;
}

void LaurentPoly2::add_term(const Monomial& m, const BigInt& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

LaurentPoly2& LaurentPoly2::operator+=(const LaurentPoly2& other) {
  for (const auto& [mono, c] : other.terms_) add_term(mono, c);
  return *this;
}

LaurentPoly2& LaurentPoly2::operator-=(const LaurentPoly2& other) {
  for (const auto& [mono, c] : other.terms_) add_term(mono, -c);
  return *this;
}

LaurentPoly2& LaurentPoly2::operator*=(const LaurentPoly2& other) {
  *this = *this * other;
  return *this;
}

LaurentPoly2 LaurentPoly2::operator-() const {
  LaurentPoly2 out = *this;
  for (auto& [mono, c] : out.terms_) c = -c;
  return out;
}

LaurentPoly2 operator*(const LaurentPoly2& a, const LaurentPoly2& b) {
  LaurentPoly2 out;
  if (a.is_zero() || b.is_zero()) return out;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      out.add_term(Monomial{ma.q + mb.q, ma.t + mb.t}, BigInt(ca * cb));
    }
  }
  return out;
}

namespace {

void append_power(std::ostringstream& os, const char* var, int e) {
  os << var;
  if (e != 1) os << '^' << e;
}

}  // namespace

std::string LaurentPoly2::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // Highest monomial first reads more naturally.
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [mono, c] = *it;
    BigInt mag = abs(c);
    if (first) {
      if (c < 0) os << '-';
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    bool constant = mono.q == 0 && mono.t == 0;
    if (mag != 1 || constant) {
      os << mag.get_str();
      if (!constant) os << '*';
    }
    if (mono.q != 0) append_power(os, "q", mono.q);
    if (mono.q != 0 && mono.t != 0) os << '*';
    if (mono.t != 0) append_power(os, "t", mono.t);
  }
  return os.str();
}

BigInt content(const LaurentPoly2& p) {
  BigInt g = 0;
  for (const auto& [mono, c] : p.terms()) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

std::optional<LaurentPoly2> exact_divide(const LaurentPoly2& a, const LaurentPoly2& b) {
  if (b.is_zero()) throw DomainError("division by the zero polynomial");
  if (a.is_zero()) return LaurentPoly2();
  // Strip monomial factors so that lex division runs on honest polynomials,
  // where the lex order is a well-order and the loop terminates.
  const int aq = a.min_q(), at = a.min_t(), bq = b.min_q(), bt = b.min_t();
  LaurentPoly2 rem = a.shifted(-aq, -at);
  const LaurentPoly2 div = b.shifted(-bq, -bt);
  const Monomial lead = div.leading_monomial();
  const BigInt& lead_c = div.leading_coeff();
  LaurentPoly2 quotient;
  while (!rem.is_zero()) {
    Monomial m = rem.leading_monomial();
    if (m.q < lead.q || m.t < lead.t) return std::nullopt;
    const BigInt& c = rem.leading_coeff();
    if (!mpz_divisible_p(c.get_mpz_t(), lead_c.get_mpz_t())) return std::nullopt;
    BigInt qc = c / lead_c;
    LaurentPoly2 term = LaurentPoly2::monomial(qc, m.q - lead.q, m.t - lead.t);
    rem -= term * div;
    quotient += term;
  }
  return quotient.shifted(aq - bq, at - bt);
}

LaurentPoly2 qt_integer(int n) {
  if (n < 0) throw DomainError("quantum integer of a negative number");
  LaurentPoly2 out;
  for (int k = 0; k < n; ++k) out += LaurentPoly2::monomial(k % 2 == 0 ? 1 : -1, 0, k);
  return out;
}

LaurentPoly2 qt_factorial(int n) {
  LaurentPoly2 out(1);
  for (int k = 1; k <= n; ++k) out *= qt_integer(k);
  return out;
}

LaurentPoly2 qt_binomial(int k, int i) {
  if (k < 0 || i < 0 || i > k) {
    throw DomainError("qt_binomial requires 0 <= i <= k (got k=" + std::to_string(k) + ", i=" + std::to_string(i) + ")");
  }
  // Pascal rule [k, i] = [k-1, i-1] + x^i [k-1, i] with x = -t.
  std::vector<LaurentPoly2> row{LaurentPoly2(1)};
  for (int kk = 1; kk <= k; ++kk) {
    std::vector<LaurentPoly2> next(kk + 1);
    next[0] = LaurentPoly2(1);
    next[kk] = LaurentPoly2(1);
    for (int j = 1; j < kk; ++j) {
      next[j] = row[j - 1] + LaurentPoly2::monomial(j % 2 == 0 ? 1 : -1, 0, j) * row[j];
    }
    row = std::move(next);
  }
  return row[i];
}

namespace {

Complex ipow(Complex base, int e) {
  if (e < 0) {
    if (base == Complex(0.0)) throw DomainError("zero base raised to a negative exponent");
    base = Complex(1.0) / base;
    e = -e;
  }
  Complex result(1.0);
  while (e > 0) {
    if (e & 1) result *= base;
    base *= base;
    e >>= 1;
  }
  return result;
}

double magnitude_sum(const LaurentPoly2& p, Complex q, Complex t) {
  double s = 0.0;
  for (const auto& [mono, c] : p.terms()) s += std::abs(c.get_d() * ipow(q, mono.q) * ipow(t, mono.t));
  return s;
}

}  // namespace

Complex evaluate(const LaurentPoly2& p, Complex q, Complex t) {
  Complex total(0.0);
  // Group by q exponent: sum_a q^a * (sum_b c_ab t^b).
  auto it = p.terms().begin();
  while (it != p.terms().end()) {
    const int eq = it->first.q;
    Complex inner(0.0);
    for (; it != p.terms().end() && it->first.q == eq; ++it) inner += it->second.get_d() * ipow(t, it->first.t);
    total += ipow(q, eq) * inner;
  }
  return total;
}

// ---------------------------------------------------------------------------
// RationalQT

RationalQT::RationalQT(const LaurentPoly2& p) : num_(p), den_(1) { normalize(); }

RationalQT::RationalQT(const LaurentPoly2& num, const LaurentPoly2& den) : num_(num), den_(den) {
  if (den_.is_zero()) throw DomainError("rational function with zero denominator");
  normalize();
}

void RationalQT::normalize() {
  if (num_.is_zero()) {
    den_ = LaurentPoly2(1);
    return;
  }
  // Monomial parts go to the numerator; the denominator is made monomial-free.
  const int nq = num_.min_q(), nt = num_.min_t(), dq = den_.min_q(), dt = den_.min_t();
  LaurentPoly2 n = num_.shifted(-nq, -nt);
  LaurentPoly2 d = den_.shifted(-dq, -dt);
  LaurentPoly2 g = polynomial_gcd(n, d);
  if (!(g == LaurentPoly2(1))) {
    n = *exact_divide(n, g);
    d = *exact_divide(d, g);
  }
  BigInt cn = content(n), cd = content(d), c;
  mpz_gcd(c.get_mpz_t(), cn.get_mpz_t(), cd.get_mpz_t());
  if (c != 1) {
    LaurentPoly2 inv_n, inv_d;
    for (const auto& [mono, coeff] : n.terms()) inv_n += LaurentPoly2::monomial(coeff / c, mono.q, mono.t);
    for (const auto& [mono, coeff] : d.terms()) inv_d += LaurentPoly2::monomial(coeff / c, mono.q, mono.t);
    n = std::move(inv_n);
    d = std::move(inv_d);
  }
  if (d.leading_coeff() < 0) {
    n = -n;
    d = -d;
  }
  num_ = n.shifted(nq - dq, nt - dt);
  den_ = d;
}

RationalQT operator+(const RationalQT& a, const RationalQT& b) {
  return RationalQT(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RationalQT operator-(const RationalQT& a, const RationalQT& b) {
  return RationalQT(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

RationalQT operator*(const RationalQT& a, const RationalQT& b) {
  return RationalQT(a.num_ * b.num_, a.den_ * b.den_);
}

RationalQT operator/(const RationalQT& a, const RationalQT& b) {
  if (b.is_zero()) throw DomainError("division by the zero rational function");
  return RationalQT(a.num_ * b.den_, a.den_ * b.num_);
}

std::string RationalQT::to_string() const {
  if (is_polynomial()) return num_.to_string();
  return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

Complex evaluate(const RationalQT& r, Complex q, Complex t) {
  const Complex den = evaluate(r.denominator(), q, t);
  const double scale = magnitude_sum(r.denominator(), q, t);
  if (den == Complex(0.0) || std::abs(den) <= 1e-14 * scale || !std::isfinite(std::abs(den))) {
    throw DomainError("denominator " + r.denominator().to_string() + " vanishes at the evaluation point");
  }
  return evaluate(r.numerator(), q, t) / den;
}

// ---------------------------------------------------------------------------
// PolyMatrix

PolyMatrix::PolyMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

PolyMatrix PolyMatrix::identity(std::size_t dim) {
  PolyMatrix m(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = LaurentPoly2(1);
  return m;
}

bool PolyMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const LaurentPoly2& p) { return p.is_zero(); });
}

PolyMatrix PolyMatrix::block(std::size_t row0, std::size_t col0, std::size_t rows, std::size_t cols) const {
  PolyMatrix out(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) out(i, j) = (*this)(row0 + i, col0 + j);
  return out;
}

PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.cols_ != b.rows_) throw DomainError("matrix dimension mismatch in product");
  PolyMatrix out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const LaurentPoly2& aik = a(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        const LaurentPoly2& bkj = b(k, j);
        if (!bkj.is_zero()) out(i, j) += aik * bkj;
      }
    }
  }
  return out;
}

PolyMatrix operator+(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DomainError("matrix dimension mismatch in sum");
  PolyMatrix out = a;
  for (std::size_t k = 0; k < out.data_.size(); ++k) out.data_[k] += b.data_[k];
  return out;
}

PolyMatrix operator-(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DomainError("matrix dimension mismatch in difference");
  PolyMatrix out = a;
  for (std::size_t k = 0; k < out.data_.size(); ++k) out.data_[k] -= b.data_[k];
  return out;
}

LaurentPoly2 determinant(const PolyMatrix& input) {
  if (input.rows() != input.cols()) throw DomainError("determinant of a non-square matrix");
  const std::size_t n = input.rows();
  if (n == 0) return LaurentPoly2(1);
  PolyMatrix m = input;
  LaurentPoly2 prev(1);
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k).is_zero()) {
      std::size_t swap = k + 1;
      while (swap < n && m(swap, k).is_zero()) ++swap;
      if (swap == n) return LaurentPoly2();
      for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(swap, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        LaurentPoly2 num = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        auto quot = exact_divide(num, prev);
        if (!quot) throw DomainError("Bareiss step produced an inexact division");
        m(i, j) = std::move(*quot);
      }
      m(i, k) = LaurentPoly2();
    }
    prev = m(k, k);
  }
  LaurentPoly2 det = m(n - 1, n - 1);
  return sign < 0 ? -det : det;
}

std::vector<std::vector<Complex>> evaluate(const PolyMatrix& m, Complex q, Complex t) {
  std::vector<std::vector<Complex>> out(m.rows(), std::vector<Complex>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = evaluate(m(i, j), q, t);
  return out;
}

// ---------------------------------------------------------------------------
// JSON

nlohmann::json to_json(const LaurentPoly2& p) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [mono, c] : p.terms()) terms.push_back({mono.q, mono.t, c.get_str()});
  return {{"terms", terms}};
}

LaurentPoly2 laurent_from_json(const nlohmann::json& j) {
  LaurentPoly2 out;
  for (const auto& term : j.at("terms")) {
    if (!term.is_array() || term.size() != 3) throw DomainError("malformed polynomial term");
    BigInt c;
    if (term[2].is_string()) {
      if (c.set_str(term[2].get<std::string>(), 10) != 0) throw DomainError("malformed coefficient");
    } else {
      c = BigInt(term[2].get<long>());
    }
    out += LaurentPoly2::monomial(c, term[0].get<int>(), term[1].get<int>());
  }
  return out;
}

nlohmann::json to_json(const RationalQT& r) {
  return {{"numerator", to_json(r.numerator())},
          {"denominator", to_json(r.denominator())},
          {"text", r.to_string()}};
}

nlohmann::json to_json(const PolyMatrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace framedrep
