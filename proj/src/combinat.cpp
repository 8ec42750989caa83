#include "grassdim/combinat.hpp"

#include <algorithm>

namespace grassdim {

long long binomial(int n, int k) {
  if (n < 0 || n > 64) throw TooLarge("binomial requires 0 <= n <= 64");
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  // Row-by-row Pascal update stays within int64 for n <= 64.
  long long c = 1;
  for (int i = 1; i <= k; ++i) {
    c = c * (n - k + i) / i;
  }
  return c;
}

MultiIndex MultiIndex::from_bits(uint64_t bits, int ambient) {
  if (ambient < 0 || ambient > 64)
    throw InvalidParams("ambient size must lie in [0, 64]");
  if (ambient < 64 && (bits >> ambient) != 0)
    throw InvalidParams("multi-index entry exceeds ambient size");
  return {bits, ambient};
}

MultiIndex MultiIndex::from_list(std::span<const int> entries, int ambient) {
  uint64_t bits = 0;
  for (int e : entries) {
    if (e < 0 || e >= ambient)
      throw InvalidParams("multi-index entry out of range");
    uint64_t b = uint64_t{1} << e;
    if (bits & b) throw InvalidParams("multi-index entries must be distinct");
    bits |= b;
  }
  return from_bits(bits, ambient);
}

MultiIndex MultiIndex::from_list(std::initializer_list<int> entries,
                                 int ambient) {
  return from_list(std::span<const int>(entries.begin(), entries.size()),
                   ambient);
}

std::vector<int> MultiIndex::entries() const {
  std::vector<int> out;
  out.reserve(size());
  for (int i = 0; i < ambient; ++i)
    if (contains(i)) out.push_back(i);
  return out;
}

MultiIndex MultiIndex::complement() const {
  uint64_t all = ambient == 64 ? ~uint64_t{0}
                               : (uint64_t{1} << ambient) - 1;
  return {all & ~bits, ambient};
}

std::string MultiIndex::str() const {
  std::string s = "{";
  bool first = true;
  for (int e : entries()) {
    if (!first) s += ",";
    s += std::to_string(e);
    first = false;
  }
  return s + "}";
}

std::vector<MultiIndex> subsets_lex(int n, int k) {
  if (n < 0 || k < 0 || k > n)
    throw InvalidParams("subsets_lex requires 0 <= k <= n");
  if (n > 64) throw TooLarge("subsets_lex requires n <= 64");
  long long count = binomial(n, k);
  if (count > (1LL << 22))
    throw TooLarge("refusing to materialize more than 2^22 subsets");
  std::vector<MultiIndex> out;
  out.reserve(static_cast<size_t>(count));
  std::vector<int> c(k);
  for (int i = 0; i < k; ++i) c[i] = i;
  for (;;) {
    out.push_back(MultiIndex::from_list(c, n));
    // Advance to the lexicographic successor.
    int i = k - 1;
    while (i >= 0 && c[i] == n - k + i) --i;
    if (i < 0) break;
    ++c[i];
    for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
  }
  return out;
}

long long rank_lex(const MultiIndex& I) {
  int n = I.ambient;
  int k = I.size();
  long long rank = 0;
  int i = 0;        // entries consumed
  int prev = -1;    // last consumed entry
  for (int c : I.entries()) {
    for (int j = prev + 1; j < c; ++j)
      rank += binomial(n - 1 - j, k - 1 - i);
    prev = c;
    ++i;
  }
  return rank;
}

MultiIndex unrank_lex(int n, int k, long long rank) {
  if (rank < 0 || rank >= binomial(n, k))
    throw IndexOutOfRange("subset rank out of range");
  uint64_t bits = 0;
  int next = 0;
  for (int i = 0; i < k; ++i) {
    for (int c = next;; ++c) {
      long long block = binomial(n - 1 - c, k - 1 - i);
      if (rank < block) {
        bits |= uint64_t{1} << c;
        next = c + 1;
        break;
      }
      rank -= block;
    }
  }
  return MultiIndex::from_bits(bits, n);
}

int complement_sign(const MultiIndex& I) {
  // Inversions of the word [sorted I, sorted complement]: a pair inverts
  // exactly when a member of I exceeds a later complement element.
  long long inv = 0;
  for (int a : I.entries()) inv += a - I.position_of(a);
  return (inv % 2 == 0) ? 1 : -1;
}

int hamming_distance(const MultiIndex& I, const MultiIndex& J) {
  if (I.ambient != J.ambient)
    throw AmbientMismatch("multi-indices live in different ambient sets");
  return std::popcount(I.bits ^ J.bits);
}

}  // namespace grassdim
