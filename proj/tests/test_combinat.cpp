#include <algorithm>
#include <vector>

#include "doctest.h"
#include "grassdim/combinat.hpp"
#include "grassdim/rng.hpp"

using namespace grassdim;

namespace {

// Independent parity oracle: count bubble-sort swaps of the explicit word.
int word_sign(std::vector<int> word) {
  int swaps = 0;
  for (size_t i = 0; i < word.size(); ++i)
    for (size_t j = i + 1; j < word.size(); ++j)
      if (word[i] > word[j]) ++swaps;
  return swaps % 2 == 0 ? 1 : -1;
}

int complement_sign_oracle(const MultiIndex& I) {
  std::vector<int> word = I.entries();
  for (int e : I.complement().entries()) word.push_back(e);
  return word_sign(word);
}

}  // namespace

TEST_CASE("binomial") {
  CHECK(binomial(4, 2) == 6);
  CHECK(binomial(6, 3) == 20);
  CHECK(binomial(10, 5) == 252);
  CHECK(binomial(5, 0) == 1);
  CHECK(binomial(5, 7) == 0);
  CHECK_THROWS_AS(binomial(70, 3), TooLarge);
}

TEST_CASE("subsets_lex enumeration") {
  auto s42 = subsets_lex(4, 2);
  REQUIRE(s42.size() == 6);
  std::vector<std::vector<int>> want = {{0, 1}, {0, 2}, {0, 3},
                                        {1, 2}, {1, 3}, {2, 3}};
  for (size_t i = 0; i < want.size(); ++i) CHECK(s42[i].entries() == want[i]);

  CHECK(subsets_lex(6, 3).size() == 20);
  auto empty = subsets_lex(5, 0);
  REQUIRE(empty.size() == 1);
  CHECK(empty[0].entries().empty());

  CHECK_THROWS_AS(subsets_lex(3, 4), InvalidParams);
  CHECK_THROWS_AS(subsets_lex(-1, 0), InvalidParams);
}

TEST_CASE("lex order is strictly increasing and rank/unrank invert it") {
  for (int n = 0; n <= 9; ++n) {
    for (int k = 0; k <= n; ++k) {
      auto subs = subsets_lex(n, k);
      for (size_t i = 0; i + 1 < subs.size(); ++i)
        CHECK(subs[i].entries() < subs[i + 1].entries());
      for (size_t i = 0; i < subs.size(); ++i) {
        CHECK(rank_lex(subs[i]) == static_cast<long long>(i));
        CHECK(unrank_lex(n, k, static_cast<long long>(i)) == subs[i]);
      }
    }
  }
  CHECK_THROWS_AS(unrank_lex(4, 2, 6), IndexOutOfRange);
}

TEST_CASE("complement_sign examples") {
  // Leading block is the identity permutation.
  for (int n = 2; n <= 8; ++n)
    for (int k = 0; k <= n; ++k) {
      uint64_t low = (uint64_t{1} << k) - 1;
      CHECK(complement_sign(MultiIndex::from_bits(low, n)) == 1);
    }
  CHECK(complement_sign(MultiIndex::from_list({1}, 2)) == -1);
  // {0,2} in n=4 gives the word (0,2,1,3) with one inversion.
  MultiIndex I = MultiIndex::from_list({0, 2}, 4);
  CHECK(complement_sign_oracle(I) == -1);
  CHECK(complement_sign(I) == -1);
}

TEST_CASE("complement_sign matches the word-parity oracle everywhere n<=8") {
  for (int n = 1; n <= 8; ++n)
    for (int k = 0; k <= n; ++k)
      for (const auto& I : subsets_lex(n, k))
        CHECK(complement_sign(I) == complement_sign_oracle(I));
}

TEST_CASE("double complement sign consistency") {
  for (int n = 1; n <= 8; ++n)
    for (int k = 0; k <= n; ++k)
      for (const auto& I : subsets_lex(n, k)) {
        int lhs = complement_sign(I) * complement_sign(I.complement());
        int rhs = (k * (n - k)) % 2 == 0 ? 1 : -1;
        CHECK(lhs == rhs);
      }
}

TEST_CASE("hamming distance") {
  MultiIndex a = MultiIndex::from_list({1, 2, 3}, 6);
  MultiIndex b = MultiIndex::from_list({1, 4, 5}, 6);
  CHECK(hamming_distance(a, b) == 4);
  CHECK(hamming_distance(a, a) == 0);
  CHECK_THROWS_AS(
      hamming_distance(a, MultiIndex::from_list({0}, 5)), AmbientMismatch);
}

TEST_CASE("hamming distance is a metric on k-subsets") {
  Rng rng(404);
  for (int trial = 0; trial < 300; ++trial) {
    int n = 4 + static_cast<int>(rng.below(5));
    int k = 1 + static_cast<int>(rng.below(static_cast<uint64_t>(n)));
    auto subs = subsets_lex(n, k);
    auto pick = [&] { return subs[rng.below(subs.size())]; };
    MultiIndex x = pick(), y = pick(), z = pick();
    CHECK(hamming_distance(x, y) == hamming_distance(y, x));
    CHECK(hamming_distance(x, z) <=
          hamming_distance(x, y) + hamming_distance(y, z));
    if (hamming_distance(x, y) == 0) CHECK(x == y);
  }
}

TEST_CASE("radius-1 exchange ball has k(n-k)+1 members") {
  // Single-exchange neighbours (symmetric difference <= 2) of the standard
  // k-subset, standard subset included.
  for (int n = 3; n <= 8; ++n)
    for (int k = 1; k < n; ++k) {
      MultiIndex center =
          MultiIndex::from_bits((uint64_t{1} << k) - 1, n);
      int count = 0;
      for (const auto& J : subsets_lex(n, k))
        if (hamming_distance(center, J) <= 2) ++count;
      CHECK(count == k * (n - k) + 1);
    }
}
