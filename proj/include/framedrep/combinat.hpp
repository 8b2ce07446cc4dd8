#pragma once
// Index sets K_{n,m}^{(r)}, rank formulas and the multiset Vandermonde sum.

#include <functional>
#include <vector>

#include "framedrep/ring.hpp"

namespace framedrep {

// Exact binomial C(n, k); zero when k < 0 or k > n. Requires n >= 0.
BigInt binomial(long n, long k);

struct MultiIndexK {
  std::vector<int> k;               // length n - 1
  std::vector<std::vector<int>> l;  // n rows of length r
  int total() const;
  bool operator==(const MultiIndexK&) const = default;
};

// All compositions of m into (n-1) + rn parts, lexicographic on (k, l row-major).
std::vector<MultiIndexK> enumerate_K(int n, int m, int r);
// Same order, without materializing the list. Returns the count.
std::size_t for_each_K(int n, int m, int r, const std::function<void(const std::vector<int>&)>& visit);

struct RankFormulas {
  BigInt rank_L;
  BigInt rank_N;
  BigInt rank_quotient;
  BigInt dim_W;
  BigInt dim_S;
};

RankFormulas rank_formulas(int n, int m, int r);

struct VandermondeCheck {
  bool holds = false;
  std::vector<BigInt> summands;  // p = 0..m
  BigInt total;
  BigInt closed_form;
};

VandermondeCheck vandermonde_check(int n, int m, int r);

nlohmann::json to_json(const RankFormulas& f);
nlohmann::json to_json(const VandermondeCheck& v);
nlohmann::json bigint_json(const BigInt& v);

}  // namespace framedrep
