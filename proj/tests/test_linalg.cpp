#include <vector>

#include "doctest.h"
#include "grassdim/linalg.hpp"
#include "grassdim/rng.hpp"

using namespace grassdim;

namespace {

template <class F>
Matrix<F> random_matrix(const F& f, int rows, int cols, Rng& rng) {
  Matrix<F> m(f, rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m.at(i, j) = f.random(rng);
  return m;
}

/// Independent oracle: Leibniz expansion over all permutations (n <= 6).
template <class F>
typename F::Elem det_leibniz(const Matrix<F>& m) {
  const F& f = m.field();
  int n = m.rows();
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  auto acc = f.zero();
  do {
    int inversions = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inversions;
    auto prod = f.one();
    for (int i = 0; i < n; ++i) prod = f.mul(prod, m.at(i, perm[i]));
    acc = inversions % 2 == 0 ? f.add(acc, prod) : f.sub(acc, prod);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return acc;
}

template <class F>
Matrix<F> random_with_rank(const F& f, int rows, int cols, int r, Rng& rng) {
  auto a = random_matrix(f, rows, r, rng);
  auto b = random_matrix(f, r, cols, rng);
  return matmul(a, b);
}

}  // namespace

TEST_CASE("det basics") {
  RationalField q;
  auto id = Matrix<RationalField>::identity(q, 4);
  CHECK(det(id) == Rational(1));

  Matrix<RationalField> m(q, 2, 2);
  m.at(0, 0) = 1;
  m.at(0, 1) = 2;
  m.at(1, 0) = 3;
  m.at(1, 1) = 4;
  CHECK(det(m) == Rational(-2));

  Matrix<RationalField> nonsq(q, 2, 3);
  CHECK_THROWS_AS(det(nonsq), NotSquare);
}

TEST_CASE("det matches Leibniz expansion for n <= 6") {
  Rng rng(99);
  PrimeField zp(1'000'003);
  RationalField qf;
  for (int n = 1; n <= 6; ++n) {
    auto mp = random_matrix(zp, n, n, rng);
    CHECK(det(mp) == det_leibniz(mp));
    Matrix<RationalField> mq(qf, n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        mq.at(i, j) = Rational(rng.int_in(-9, 9), 1 + rng.below(4));
    CHECK(det(mq) == det_leibniz(mq));
  }
}

TEST_CASE("Laplace expansion along the first row") {
  PrimeField f(1'000'003);
  Rng rng(7);
  auto m = random_matrix(f, 6, 6, rng);
  auto acc = f.zero();
  for (int j = 0; j < 6; ++j) {
    auto rest = m.drop_row(0);
    MultiIndex cols = MultiIndex::from_bits((uint64_t{1} << 6) - 1, 6).without(j);
    auto cof = det(rest.select_columns(cols));
    auto term = f.mul(m.at(0, j), cof);
    acc = j % 2 == 0 ? f.add(acc, term) : f.sub(acc, term);
  }
  CHECK(acc == det(m));
}

TEST_CASE("det multiplicativity, swaps and scalings") {
  PrimeField f(2'147'483'647ULL);
  Rng rng(123);
  for (int trial = 0; trial < 10; ++trial) {
    auto a = random_matrix(f, 5, 5, rng);
    auto b = random_matrix(f, 5, 5, rng);
    CHECK(det(matmul(a, b)) == f.mul(det(a), det(b)));

    auto swapped = a;
    for (int j = 0; j < 5; ++j) std::swap(swapped.at(0, j), swapped.at(3, j));
    CHECK(det(swapped) == f.neg(det(a)));

    auto scaled = a;
    auto c = f.random(rng);
    for (int j = 0; j < 5; ++j) scaled.at(2, j) = f.mul(c, scaled.at(2, j));
    CHECK(det(scaled) == f.mul(c, det(a)));
  }
}

TEST_CASE("rank basics") {
  PrimeField f(1'000'003);
  Matrix<PrimeField> zero(f, 3, 5);
  CHECK(rank(zero) == 0);

  Rng rng(55);
  for (int trial = 0; trial < 20; ++trial) {
    int k = 1 + static_cast<int>(rng.below(4));
    int n = k + static_cast<int>(rng.below(4));
    auto m = random_matrix(f, k, n, rng);
    CHECK(rank(m) == k);  // iid entries are full rank with prob ~1 - k/p
    CHECK(rank(m) == rank(m.transposed()));
  }
}

TEST_CASE("kernel basics and the rank-nullity identity") {
  RationalField q;
  auto id = Matrix<RationalField>::identity(q, 3);
  CHECK(kernel(id).empty());

  Matrix<RationalField> row(q, 1, 2);
  row.at(0, 0) = 1;
  row.at(0, 1) = 1;
  auto basis = kernel(row);
  REQUIRE(basis.size() == 1);
  CHECK(basis[0][0] == -basis[0][1]);
  CHECK(basis[0][0] != 0);

  PrimeField f(1'000'003);
  Rng rng(66);
  for (int trial = 0; trial < 20; ++trial) {
    int rows = 2 + static_cast<int>(rng.below(4));
    int cols = 2 + static_cast<int>(rng.below(5));
    int r = static_cast<int>(rng.below(std::min(rows, cols) + 1));
    auto m = random_with_rank(f, rows, cols, r, rng);
    int rk = rank(m);
    auto ker = kernel(m);
    CHECK(static_cast<int>(ker.size()) == cols - rk);
    for (const auto& v : ker) {
      for (int i = 0; i < rows; ++i) {
        auto acc = f.zero();
        for (int j = 0; j < cols; ++j)
          acc = f.add(acc, f.mul(m.at(i, j), v[j]));
        CHECK(f.is_zero(acc));
      }
    }
  }
}

TEST_CASE("minor_det") {
  PrimeField f(1'000'003);
  Rng rng(31);
  auto m = random_matrix(f, 5, 7, rng);

  MultiIndex all_rows = MultiIndex::from_bits((1u << 5) - 1, 5);
  MultiIndex first5 = MultiIndex::from_bits((1u << 5) - 1, 7);
  CHECK(minor_det(m, all_rows, first5) == det(m.select_columns(first5)));

  MultiIndex r1 = MultiIndex::from_list({2}, 5);
  MultiIndex c1 = MultiIndex::from_list({4}, 7);
  CHECK(minor_det(m, r1, c1) == m.at(2, 4));

  for (int trial = 0; trial < 20; ++trial) {
    auto rows = subsets_lex(5, 3);
    auto cols = subsets_lex(7, 3);
    auto R = rows[rng.below(rows.size())];
    auto C = cols[rng.below(cols.size())];
    CHECK(minor_det(m, R, C) == det(m.submatrix(R, C)));
  }

  CHECK_THROWS_AS(minor_det(m, r1, first5), SizeMismatch);
  CHECK_THROWS_AS(
      minor_det(m, MultiIndex::from_list({6}, 7), MultiIndex::from_list({0}, 7)),
      IndexOutOfRange);
}

TEST_CASE("inverse round trip") {
  PrimeField f(1'000'003);
  Rng rng(90);
  auto m = random_matrix(f, 6, 6, rng);
  auto mi = inverse(m);
  CHECK(matmul(m, mi) == Matrix<PrimeField>::identity(f, 6));

  Matrix<PrimeField> sing(f, 2, 2);  // all zeros
  CHECK_THROWS_AS(inverse(sing), NotInvertible);
}

TEST_CASE("rank over Z_p vs rank over the rationals") {
  // Planted-rank integer matrices with entries in [-100, 100]: mod-p rank
  // never exceeds the rational rank, and agrees in at least 99% of 1000
  // trials for a 31-bit prime.
  PrimeField zp(2'147'483'629ULL);
  RationalField qf;
  Rng rng(2718);
  int agree = 0;
  const int trials = 1000;
  for (int t = 0; t < trials; ++t) {
    int rows = 5, cols = 5;
    int r = static_cast<int>(rng.below(6));
    Matrix<RationalField> a(qf, rows, r), b(qf, r, cols);
    Matrix<PrimeField> ap(zp, rows, r), bp(zp, r, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < r; ++j) {
        long long v = rng.int_in(-100, 100);
        a.at(i, j) = qf.from_int(v);
        ap.at(i, j) = zp.from_int(v);
      }
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < cols; ++j) {
        long long v = rng.int_in(-100, 100);
        b.at(i, j) = qf.from_int(v);
        bp.at(i, j) = zp.from_int(v);
      }
    int rq = rank(matmul(a, b));
    int rp = rank(matmul(ap, bp));
    CHECK(rp <= rq);
    if (rp == rq) ++agree;
  }
  CHECK(agree >= trials * 99 / 100);
}
