#include "framedrep/combinat.hpp"

#include <mutex>

#include "framedrep/errors.hpp"

namespace framedrep {

BigInt binomial(long n, long k) {
  if (n < 0) throw DomainError("binomial with negative upper index");
  if (k < 0 || k > n) return 0;
  // Pascal rows, grown on demand.
  static std::mutex mu;
  static std::vector<std::vector<BigInt>> rows{{BigInt(1)}};
  std::lock_guard<std::mutex> lock(mu);
  while (static_cast<long>(rows.size()) <= n) {
    const auto& prev = rows.back();
    std::vector<BigInt> next(prev.size() + 1);
    next.front() = 1;
    next.back() = 1;
    for (std::size_t j = 1; j + 1 < next.size(); ++j) next[j] = prev[j - 1] + prev[j];
    rows.push_back(std::move(next));
  }
  return rows[n][k];
}

int MultiIndexK::total() const {
  int s = 0;
  for (int v : k) s += v;
  for (const auto& row : l)
    for (int v : row) s += v;
  return s;
}

namespace {

void check(int n, int m, int r) {
  if (n < 1) throw DomainError("n must be at least 1");
  if (m < 0) throw DomainError("m must be nonnegative");
  if (r < 1) throw DomainError("r must be at least 1");
}

}  // namespace

std::size_t for_each_K(int n, int m, int r, const std::function<void(const std::vector<int>&)>& visit) {
  check(n, m, r);
  const int parts = (n - 1) + r * n;
  std::vector<int> v(parts, 0);
  std::size_t count = 0;
  // Ascending lexicographic order: the first part grows slowest.
  std::function<void(int, int)> rec = [&](int pos, int remaining) {
    if (pos == parts - 1) {
      v[pos] = remaining;
      visit(v);
      ++count;
      return;
    }
    for (int a = 0; a <= remaining; ++a) {
      v[pos] = a;
      rec(pos + 1, remaining - a);
    }
    v[pos] = 0;
  };
  if (parts == 0) {
    if (m == 0) {
      visit(v);
      ++count;
    }
    return count;
  }
  rec(0, m);
  return count;
}

std::vector<MultiIndexK> enumerate_K(int n, int m, int r) {
  std::vector<MultiIndexK> out;
  for_each_K(n, m, r, [&](const std::vector<int>& v) {
    MultiIndexK idx;
    idx.k.assign(v.begin(), v.begin() + (n - 1));
    for (int i = 0; i < n; ++i) {
      auto start = v.begin() + (n - 1) + i * r;
      idx.l.emplace_back(start, start + r);
    }
    out.push_back(std::move(idx));
  });
  return out;
}

RankFormulas rank_formulas(int n, int m, int r) {
  check(n, m, r);
  RankFormulas f;
  f.rank_L = binomial(r * n + n + m - 2, m);
  // C(n+m-2, m) with n = 1 is C(m-1, m): 1 for m = 0, else 0.
  f.rank_quotient = n + m - 2 >= 0 ? binomial(n + m - 2, m) : BigInt(m == 0 ? 1 : 0);
  f.rank_N = f.rank_L - f.rank_quotient;
  f.dim_W = binomial(r * n + n + m - 1, m);
  f.dim_S = binomial(r * n + n + m - 2, m);
  return f;
}

VandermondeCheck vandermonde_check(int n, int m, int r) {
  check(n, m, r);
  if (n < 2) throw DomainError("the Vandermonde summation needs n >= 2");
  VandermondeCheck out;
  out.total = 0;
  for (int p = 0; p <= m; ++p) {
    BigInt term = binomial(r * n + m - p - 1, m - p) * binomial(n + p - 2, p);
    out.total += term;
    out.summands.push_back(term);
  }
  out.closed_form = binomial(r * n + n + m - 2, m);
  out.holds = out.total == out.closed_form;
  return out;
}

nlohmann::json bigint_json(const BigInt& v) {
  if (v.fits_slong_p()) return v.get_si();
  return v.get_str();
}

nlohmann::json to_json(const RankFormulas& f) {
  return {{"rank_L", bigint_json(f.rank_L)},
          {"rank_N", bigint_json(f.rank_N)},
          {"rank_quotient", bigint_json(f.rank_quotient)},
          {"dim_W", bigint_json(f.dim_W)},
          {"dim_S", bigint_json(f.dim_S)}};
}

nlohmann::json to_json(const VandermondeCheck& v) {
  nlohmann::json summands = nlohmann::json::array();
  for (const auto& s : v.summands) summands.push_back(bigint_json(s));
  return {{"holds", v.holds},
          {"summands", summands},
          {"total", bigint_json(v.total)},
          {"closed_form", bigint_json(v.closed_form)}};
}

}  // namespace framedrep
