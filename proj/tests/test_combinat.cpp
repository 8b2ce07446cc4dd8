#include "doctest.h"
#include "framedrep/combinat.hpp"

using namespace framedrep;

namespace {

// Stars and bars by repeated counting, no binomials involved.
long count_compositions(int total, int parts) {
  if (parts == 0) return total == 0 ? 1 : 0;
  long c = 0;
  for (int a = 0; a <= total; ++a) c += count_compositions(total - a, parts - 1);
  return c;
}

}  // namespace

TEST_CASE("enumerate_K examples") {
  CHECK(enumerate_K(2, 1, 1).size() == 3);
  auto single = enumerate_K(1, 0, 5);
  REQUIRE(single.size() == 1);
  CHECK(single[0].total() == 0);
  CHECK(enumerate_K(2, 2, 1).size() == 6);
  auto e = enumerate_K(2, 1, 2);
  CHECK(e.front().k == std::vector<int>{0});
  CHECK(e.back().k == std::vector<int>{1});
  for (const auto& idx : e) CHECK(idx.total() == 1);
}

TEST_CASE("enumeration counts and order") {
  for (int n = 1; n <= 5; ++n)
    for (int m = 0; m <= 6; ++m)
      for (int r = 1; r <= 4; ++r) {
        std::vector<int> prev;
        bool ordered = true;
        const auto count = for_each_K(n, m, r, [&](const std::vector<int>& v) {
          if (!prev.empty() && !(prev < v)) ordered = false;
          prev = v;
        });
        CHECK(ordered);
        CHECK(BigInt(static_cast<long>(count)) == rank_formulas(n, m, r).rank_L);
        if (m <= 3) CHECK(static_cast<long>(count) == count_compositions(m, n - 1 + r * n));
      }
}

TEST_CASE("rank formulas") {
  auto f = rank_formulas(2, 2, 1);
  CHECK(f.rank_L == 6);
  CHECK(f.rank_quotient == 1);
  CHECK(f.rank_N == 5);
  auto g = rank_formulas(1, 1, 1);
  CHECK(g.dim_W == 2);
  CHECK(g.dim_S == 1);
  for (int n = 1; n <= 4; ++n)
    for (int r = 1; r <= 3; ++r) {
      auto z = rank_formulas(n, 0, r);
      CHECK(z.rank_L == 1);
      CHECK(z.rank_quotient == 1);
      CHECK(z.rank_N == 0);
      CHECK(z.dim_W == 1);
      CHECK(z.dim_S == 1);
      CHECK(rank_formulas(n, 1, r).rank_L == n - 1 + r * n);
      for (int m = 0; m <= 5; ++m) CHECK(rank_formulas(n, m, r).dim_S == rank_formulas(n, m, r).rank_L);
    }
}

TEST_CASE("Vandermonde summation") {
  auto v = vandermonde_check(2, 2, 1);
  CHECK(v.holds);
  CHECK(v.summands == std::vector<BigInt>{3, 2, 1});
  CHECK(v.total == 6);
  CHECK(vandermonde_check(2, 0, 3).total == 1);
  CHECK(vandermonde_check(3, 3, 2).holds);
  for (int n = 2; n <= 5; ++n)
    for (int m = 0; m <= 6; ++m)
      for (int r = 1; r <= 4; ++r) CHECK(vandermonde_check(n, m, r).holds);
  CHECK_THROWS(vandermonde_check(1, 1, 1));
}

TEST_CASE("binomial") {
  CHECK(binomial(10, 3) == 120);
  CHECK(binomial(3, 5) == 0);
  CHECK(binomial(100, 50) == BigInt("100891344545564193334812497256"));
}
