#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "grassdim/errors.hpp"

namespace grassdim {

/// Exact binomial coefficient; requires n <= 64 (values fit in int64).
long long binomial(int n, int k);

/// A sorted k-subset of {0, ..., ambient-1}, stored as a bitmask so that
/// symmetric difference and popcount are O(1). Ambient size is capped at 64.
struct MultiIndex {
  uint64_t bits = 0;
  int ambient = 0;

  static MultiIndex from_bits(uint64_t bits, int ambient);
  static MultiIndex from_list(std::span<const int> entries, int ambient);
  static MultiIndex from_list(std::initializer_list<int> entries, int ambient);

  int size() const { return std::popcount(bits); }
  bool contains(int i) const { return (bits >> i) & 1; }

  /// Entries in increasing order.
  std::vector<int> entries() const;

  /// Complement within the ambient set, in increasing order.
  MultiIndex complement() const;

  /// Number of entries strictly below i (the lex position of i if i is a
  /// member of the set).
  int position_of(int i) const {
    return std::popcount(bits & ((uint64_t{1} << i) - 1));
  }

  MultiIndex with(int i) const { return {bits | (uint64_t{1} << i), ambient}; }
  MultiIndex without(int i) const {
    return {bits & ~(uint64_t{1} << i), ambient};
  }

  bool operator==(const MultiIndex&) const = default;

  std::string str() const;
};

/// All C(n,k) subsets in strictly increasing lexicographic order (on the
/// sorted entry tuples). Throws InvalidParams on negative input or k > n.
std::vector<MultiIndex> subsets_lex(int n, int k);

/// Position of I among the size-|I| subsets in subsets_lex order.
long long rank_lex(const MultiIndex& I);

/// Inverse of rank_lex.
MultiIndex unrank_lex(int n, int k, long long rank);

/// Sign of the permutation of {0..n-1} obtained by writing the entries of I
/// in increasing order followed by the sorted complement.
int complement_sign(const MultiIndex& I);

/// |I symmetric-difference J|; both operands must share the ambient set.
int hamming_distance(const MultiIndex& I, const MultiIndex& J);

}  // namespace grassdim
