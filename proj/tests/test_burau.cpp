#include <random>

#include "doctest.h"
#include "framedrep/burau.hpp"
#include "framedrep/combinat.hpp"
#include "oracles.hpp"

using namespace framedrep;

namespace {

const LaurentPoly2 q = LaurentPoly2::q();

FramedBraidWord random_word(std::mt19937& rng, int n, int length) {
  std::vector<Letter> letters;
  std::uniform_int_distribution<int> coin(0, 1);
  for (int k = 0; k < length; ++k) {
    const bool sigma = n >= 2 && coin(rng);
    std::uniform_int_distribution<int> idx(1, sigma ? n - 1 : n);
    const int e = coin(rng) ? 1 : -1;
    letters.push_back(sigma ? Letter::sigma(idx(rng), e) : Letter::tau(idx(rng), e));
  }
  return {n, letters};
}

bool is_unit(const LaurentPoly2& p) {
  return p.size() == 1 && (p.leading_coeff() == 1 || p.leading_coeff() == -1);
}

}  // namespace

TEST_CASE("full generator columns") {
  auto s = full_burau_matrix(2, 1, parse_word("s1", 2)).entries;
  // column of a_1: (1-q) a_1 + q a_2 - b_1
  CHECK(s(0, 0) == 1 - q);
  CHECK(s(1, 0) == q);
  CHECK(s(2, 0) == LaurentPoly2(-1));
  CHECK(s(3, 0) == LaurentPoly2());
  auto t = full_burau_matrix(1, 1, parse_word("t1", 1)).entries;
  CHECK(t(1, 1) == q);
  auto t2 = full_burau_matrix(1, 2, parse_word("t1", 1)).entries;
  CHECK(t2(full_b_index(1, 2, 1, 1), full_b_index(1, 2, 1, 2)) == LaurentPoly2(1));
  CHECK(full_burau_matrix(3, 2, FramedBraidWord(3, {})).entries == PolyMatrix::identity(9));
}

TEST_CASE("inverse generators are inverses") {
  for (int n = 1; n <= 4; ++n)
    for (int r = 1; r <= 3; ++r) {
      const auto id = PolyMatrix::identity(n + r * n);
      for (int i = 1; i <= n; ++i) {
        CHECK(full_generator_matrix(n, r, Letter::tau(i)) * full_generator_matrix(n, r, Letter::tau(i, -1)) == id);
        if (i < n)
          CHECK(full_generator_matrix(n, r, Letter::sigma(i)) * full_generator_matrix(n, r, Letter::sigma(i, -1)) ==
                id);
      }
    }
}

TEST_CASE("reduced basis convention") {
  auto literal = check_reduced_closure(2, 1, ReducedBasis::Literal);
  CHECK_FALSE(literal.closed);
  CHECK_FALSE(literal.describe().empty());
  CHECK(check_reduced_closure(3, 2, ReducedBasis::Difference).closed);
  CHECK(adopted_reduced_basis(3, 2) == ReducedBasis::Difference);

  // sigma_1 c_1 = -q c_1 + b_1 (n = 2, r = 1); tau_2 c_1 = c_1 - q b_2
  auto s = reduced_burau_matrix(2, 1, parse_word("s1", 2)).entries;
  CHECK(s(0, 0) == -q);
  CHECK(s(1, 0) == LaurentPoly2(1));
  CHECK(s(2, 0) == LaurentPoly2());
  auto t = reduced_burau_matrix(2, 2, parse_word("t2", 2)).entries;
  CHECK(t(0, 0) == LaurentPoly2(1));
  CHECK(t(1 + 2 + 1, 0) == LaurentPoly2(-1));  // b_2^{(2)}, adopted tau weight
  auto tl = reduced_generator_matrix(2, 2, Letter::tau(2), ReducedBasis::Difference, TauConvention::Literal);
  CHECK(tl(1 + 2 + 1, 0) == -q);
  CHECK(reduced_burau_matrix(3, 1, FramedBraidWord(3, {})).entries == PolyMatrix::identity(2 + 3));
}

TEST_CASE("tau convention") {
  // as printed, sigma_1^2 does not commute with tau_1
  auto literal = verify_relations(2, 1, BurauForm::Full, TauConvention::Literal);
  REQUIRE(literal.size() == 1);
  CHECK(literal[0].relation == "sigma-tau(1,2)");
  for (int r = 1; r <= 4; ++r) CHECK(adopted_tau_convention(r) == TauConvention::UnitWeight);
  auto s2 = full_generator_matrix(2, 1, Letter::sigma(1), TauConvention::Literal);
  s2 = s2 * s2;
  auto t1 = full_generator_matrix(2, 1, Letter::tau(1), TauConvention::Literal);
  CHECK_FALSE(s2 * t1 == t1 * s2);
  auto u1 = full_generator_matrix(2, 1, Letter::tau(1), TauConvention::UnitWeight);
  CHECK(s2 * u1 == u1 * s2);
}

TEST_CASE("relations hold exactly") {
  for (int n = 2; n <= 4; ++n)
    for (int r = 1; r <= 2; ++r) {
      CHECK(verify_relations(n, r, BurauForm::Full).empty());
      CHECK(verify_relations(n, r, BurauForm::Reduced).empty());
    }
}

TEST_CASE("generator determinants are units") {
  for (int n = 1; n <= 4; ++n)
    for (int r = 1; r <= 3; ++r)
      for (int i = 1; i <= n; ++i) {
        for (int e : {1, -1}) {
          CHECK(is_unit(determinant(full_generator_matrix(n, r, Letter::tau(i, e)))));
          if (i < n) CHECK(is_unit(determinant(full_generator_matrix(n, r, Letter::sigma(i, e)))));
        }
      }
}

TEST_CASE("b-span and quotient") {
  std::mt19937 rng(8);
  for (int n = 1; n <= 4; ++n)
    for (int r = 1; r <= 3; ++r) {
      for (int trial = 0; trial < 5; ++trial) {
        auto w = random_word(rng, n, 8);
        CHECK(preserves_b_span(full_burau_matrix(n, r, w).entries, n));
        CHECK(quotient_burau_matrix(n, r, w) == classical_burau_matrix(n, w));
      }
      for (int i = 1; i <= n; ++i)
        CHECK(quotient_burau_matrix(n, r, FramedBraidWord(n, {Letter::tau(i)})) == PolyMatrix::identity(n));
    }
  // classical block pattern for sigma_1
  auto c = classical_burau_matrix(2, parse_word("s1", 2));
  CHECK(c(0, 0) == 1 - q);
  CHECK(c(1, 0) == q);
  CHECK(c(0, 1) == LaurentPoly2(1));
  CHECK(c(1, 1) == LaurentPoly2());
}

TEST_CASE("reduced dimension matches rank formula") {
  for (int n = 2; n <= 5; ++n)
    for (int r = 1; r <= 3; ++r)
      CHECK(BigInt(static_cast<long>(reduced_burau_matrix(n, r, FramedBraidWord(n, {})).dim())) ==
            rank_formulas(n, 1, r).rank_L);
}

TEST_CASE("framed Alexander invariant") {
  CHECK(framed_alexander(2, 1, FramedBraidWord(2, {})).is_zero());
  for (int r = 1; r <= 4; ++r) CHECK(framed_alexander(1, r, parse_word("t1", 1)) == RationalQT(1 - q));

  // sigma_1, n = 2, r = 1 against a permutation-sum determinant
  auto m = reduced_burau_matrix(2, 1, parse_word("s1", 2)).entries;
  auto i_minus = PolyMatrix::identity(3) - m;
  auto expected = RationalQT(oracle::leibniz_det(i_minus) * (q - 1), q * q - 1);
  CHECK(framed_alexander(2, 1, parse_word("s1", 2)) == expected);
  CHECK(expected == RationalQT(1 - q));

  std::mt19937 rng(17);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 2 + trial % 2;
    auto w = random_word(rng, n, 10);
    auto g = random_word(rng, n, 6);
    CHECK(framed_alexander(n, 1, g * w * g.inverse()) == framed_alexander(n, 1, w));
  }
}
