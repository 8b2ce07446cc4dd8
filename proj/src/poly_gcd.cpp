// gcd over Z[q,t] by primitive pseudo-remainder sequences, treating a
// bivariate polynomial as a polynomial in q with coefficients in Z[t].

#include <algorithm>
#include <vector>

#include "framedrep/errors.hpp"
#include "framedrep/ring.hpp"

namespace framedrep {
namespace {

// Dense polynomial in t over Z; index = degree, no trailing zeros.
using UPoly = std::vector<BigInt>;

void trim(UPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

int degree(const UPoly& p) { return static_cast<int>(p.size()) - 1; }

UPoly mul(const UPoly& a, const UPoly& b) {
  if (a.empty() || b.empty()) return {};
  UPoly out(a.size() + b.size() - 1, BigInt(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  trim(out);
  return out;
}

UPoly sub(const UPoly& a, const UPoly& b) {
  UPoly out(std::max(a.size(), b.size()), BigInt(0));
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
  trim(out);
  return out;
}

BigInt ucontent(const UPoly& p) {
  BigInt g = 0;
  for (const auto& c : p) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  return g;
}

UPoly scale_div(const UPoly& p, const BigInt& d) {
  UPoly out = p;
  for (auto& c : out) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), d.get_mpz_t());
  return out;
}

UPoly scale_mul(const UPoly& p, const BigInt& d) {
  UPoly out = p;
  for (auto& c : out) c *= d;
  trim(out);
  return out;
}

UPoly uprimitive(const UPoly& p) {
  if (p.empty()) return p;
  BigInt c = ucontent(p);
  if (p.back() < 0) c = -c;
  return scale_div(p, c);
}

// lc(b)^(deg a - deg b + 1) * a mod b
UPoly uprem(UPoly a, const UPoly& b) {
  const int db = degree(b);
  const BigInt& lb = b.back();
  int steps = degree(a) - db + 1;
  while (!a.empty() && degree(a) >= db) {
    const BigInt la = a.back();
    const int shift = degree(a) - db;
    a = scale_mul(a, lb);
    UPoly sb(shift, BigInt(0));
    for (const auto& c : b) sb.push_back(c * la);
    a = sub(a, sb);
    --steps;
  }
  if (steps > 0) {
    BigInt f;
    mpz_pow_ui(f.get_mpz_t(), lb.get_mpz_t(), static_cast<unsigned long>(steps));
    a = scale_mul(a, f);
  }
  return a;
}

UPoly ugcd(UPoly a, UPoly b) {
  if (a.empty()) return uprimitive(b);
  if (b.empty()) return uprimitive(a);
  BigInt c;
  BigInt ca = ucontent(a), cb = ucontent(b);
  mpz_gcd(c.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
  a = uprimitive(a);
  b = uprimitive(b);
  if (degree(a) < degree(b)) std::swap(a, b);
  while (!b.empty()) {
    UPoly r = uprem(a, b);
    a = std::move(b);
    b = uprimitive(r);
  }
  return scale_mul(uprimitive(a), c);
}

// Exact division in Z[t]; throws if not exact.
UPoly udiv_exact(UPoly a, const UPoly& b) {
  if (b.empty()) throw DomainError("division by zero in Z[t]");
  if (a.empty()) return {};
  if (degree(a) < degree(b)) throw DomainError("inexact division in Z[t]");
  UPoly quot(degree(a) - degree(b) + 1, BigInt(0));
  while (!a.empty() && degree(a) >= degree(b)) {
    const int shift = degree(a) - degree(b);
    if (!mpz_divisible_p(a.back().get_mpz_t(), b.back().get_mpz_t())) throw DomainError("inexact division in Z[t]");
    BigInt c = a.back() / b.back();
    quot[shift] = c;
    UPoly sb(shift, BigInt(0));
    for (const auto& bc : b) sb.push_back(bc * c);
    a = sub(a, sb);
  }
  if (!a.empty()) throw DomainError("inexact division in Z[t]");
  trim(quot);
  return quot;
}

// Polynomial in q with Z[t] coefficients.
using BiPoly = std::vector<UPoly>;

void trim(BiPoly& p) {
  while (!p.empty() && p.back().empty()) p.pop_back();
}

int degree(const BiPoly& p) { return static_cast<int>(p.size()) - 1; }

BiPoly to_bipoly(const LaurentPoly2& p) {
  BiPoly out;
  for (const auto& [mono, c] : p.terms()) {
    if (mono.q < 0 || mono.t < 0) throw DomainError("internal: negative exponent in gcd input");
    if (static_cast<int>(out.size()) <= mono.q) out.resize(mono.q + 1);
    UPoly& coef = out[mono.q];
    if (static_cast<int>(coef.size()) <= mono.t) coef.resize(mono.t + 1, BigInt(0));
    coef[mono.t] = c;
  }
  for (auto& c : out) trim(c);
  trim(out);
  return out;
}

LaurentPoly2 from_bipoly(const BiPoly& p) {
  LaurentPoly2 out;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = 0; j < p[i].size(); ++j) out += LaurentPoly2::monomial(p[i][j], static_cast<int>(i), static_cast<int>(j));
  return out;
}

UPoly bcontent(const BiPoly& p) {
  UPoly g;
  for (const auto& c : p) {
    g = ugcd(g, c);
    if (g.size() == 1 && (g[0] == 1 || g[0] == -1)) break;
  }
  return g;
}

BiPoly bprimitive(const BiPoly& p) {
  if (p.empty()) return p;
  UPoly c = bcontent(p);
  BiPoly out;
  out.reserve(p.size());
  for (const auto& coef : p) out.push_back(udiv_exact(coef, c));
  return out;
}

BiPoly bprem(BiPoly a, const BiPoly& b) {
  const int db = degree(b);
  const UPoly& lb = b.back();
  while (!a.empty() && degree(a) >= db) {
    const UPoly la = a.back();
    const int shift = degree(a) - db;
    for (auto& c : a) c = mul(c, lb);
    for (int k = 0; k <= db; ++k) a[shift + k] = sub(a[shift + k], mul(b[k], la));
    trim(a);
  }
  return a;
}

}  // namespace

LaurentPoly2 polynomial_gcd(const LaurentPoly2& a, const LaurentPoly2& b) {
  if (a.is_zero() && b.is_zero()) return LaurentPoly2();
  BiPoly pa = to_bipoly(a.shifted(-a.min_q(), -a.min_t()));
  BiPoly pb = to_bipoly(b.shifted(-b.min_q(), -b.min_t()));
  if (pa.empty()) std::swap(pa, pb);
  UPoly c = ugcd(bcontent(pa), pb.empty() ? UPoly{} : bcontent(pb));
  pa = bprimitive(pa);
  pb = bprimitive(pb);
  if (!pb.empty() && degree(pa) < degree(pb)) std::swap(pa, pb);
  while (!pb.empty()) {
    BiPoly r = bprem(pa, pb);
    pa = std::move(pb);
    pb = bprimitive(r);
  }
  BiPoly g = bprimitive(pa);
  for (auto& coef : g) coef = mul(coef, c);
  trim(g);
  LaurentPoly2 out = from_bipoly(g);
  // Remove any monomial factor left by the t-content and fix the sign.
  out = out.shifted(-out.min_q(), -out.min_t());
  BigInt cont = content(out);
  if (out.leading_coeff() < 0) cont = -cont;
  LaurentPoly2 normalized;
  for (const auto& [mono, coeff] : out.terms()) normalized += LaurentPoly2::monomial(coeff / cont, mono.q, mono.t);
  return normalized;
}

}  // namespace framedrep
