#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "grassdim/combinat.hpp"
#include "grassdim/linalg.hpp"

namespace grassdim {

/// Exact coordinate vector of an element of the k-th exterior power of an
/// n-dimensional space, indexed by subsets_lex(n, k).
template <class F>
struct PlueckerVector {
  int n = 0;
  int k = 0;
  F field;
  std::vector<typename F::Elem> coords;

  PlueckerVector(F f, int n_, int k_)
      : n(n_),
        k(k_),
        field(std::move(f)),
        coords(static_cast<size_t>(binomial(n_, k_)), field.zero()) {
    if (n_ < 0 || k_ < 0 || k_ > n_)
      throw InvalidParams("exterior degree must lie in [0, n]");
  }

  typename F::Elem& operator[](const MultiIndex& I) {
    return coords[static_cast<size_t>(rank_lex(I))];
  }
  const typename F::Elem& operator[](const MultiIndex& I) const {
    return coords[static_cast<size_t>(rank_lex(I))];
  }

  bool is_zero() const {
    for (const auto& c : coords)
      if (!field.is_zero(c)) return false;
    return true;
  }

  bool operator==(const PlueckerVector& o) const {
    return n == o.n && k == o.k && coords == o.coords;
  }
};

/// Plücker vector of the row space of a k x n matrix: coordinate at column
/// set I is the maximal minor with those columns, in lex order.
template <class F>
PlueckerVector<F> pluecker(const Matrix<F>& m) {
  if (m.rows() > m.cols())
    throw TooManyRows("pluecker: more rows than columns");
  PlueckerVector<F> v(m.field(), m.cols(), m.rows());
  auto subs = subsets_lex(m.cols(), m.rows());
  for (size_t i = 0; i < subs.size(); ++i)
    v.coords[i] = det(m.select_columns(subs[i]));
  return v;
}

/// Contraction with the standard volume form: e_I maps to
/// sign(I, I*) e_{I*} where I* is the sorted complement. Output has degree
/// n - k; duality is implicit (coordinates against the dual basis).
template <class F>
PlueckerVector<F> hodge(const PlueckerVector<F>& v) {
  PlueckerVector<F> out(v.field, v.n, v.n - v.k);
  auto subs = subsets_lex(v.n, v.k);
  for (size_t i = 0; i < subs.size(); ++i) {
    const MultiIndex& I = subs[i];
    int sgn = complement_sign(I);
    const auto& c = v.coords[i];
    out[I.complement()] = sgn > 0 ? c : v.field.neg(c);
  }
  return out;
}

/// The 1-flattening of a degree-m form T. Row v holds the coordinates of the
/// contraction by e_v under the convention
///   iota_{e_v} e_{J + v} = (-1)^{pos(v, J + v)} e_J,
/// pos counting the elements of J below v. The linear map it represents
/// sends V into the degree-(m-1) component; its kernel is the left kernel
/// of the stored matrix.
template <class F>
struct Flattening {
  int n = 0;
  int degree = 0;        // degree of the contracted input form
  Matrix<F> mat;         // n x C(n, degree-1)
};

template <class F>
Flattening<F> flatten1(const PlueckerVector<F>& t) {
  if (t.k < 1) throw InvalidParams("flatten1 requires degree >= 1");
  const F& f = t.field;
  Flattening<F> fl{t.n, t.k,
                   Matrix<F>(f, t.n, static_cast<int>(binomial(t.n, t.k - 1)))};
  auto subs = subsets_lex(t.n, t.k);
  for (size_t i = 0; i < subs.size(); ++i) {
    const MultiIndex& K = subs[i];
    const auto& c = t.coords[i];
    if (f.is_zero(c)) continue;
    for (int v : K.entries()) {
      int col = static_cast<int>(rank_lex(K.without(v)));
      bool flip = K.position_of(v) % 2 != 0;
      fl.mat.at(v, col) = flip ? f.neg(c) : c;
    }
  }
  return fl;
}

/// Coordinates of the image of v under the k-th exterior power of the linear
/// map x -> A x: out_I = sum_J det(A[I, J]) v_J.
template <class F>
std::vector<typename F::Elem> wedge_apply(
    const Matrix<F>& a, int k, std::span<const typename F::Elem> v) {
  if (a.rows() != a.cols()) throw NotSquare("wedge_apply: square map only");
  const F& f = a.field();
  int n = a.rows();
  auto subs = subsets_lex(n, k);
  if (v.size() != subs.size())
    throw SizeMismatch("wedge_apply: coordinate length mismatch");
  std::vector<typename F::Elem> out(subs.size(), f.zero());
  for (size_t j = 0; j < subs.size(); ++j) {
    if (f.is_zero(v[j])) continue;
    for (size_t i = 0; i < subs.size(); ++i) {
      auto d = det(a.submatrix(subs[i], subs[j]));
      if (f.is_zero(d)) continue;
      out[i] = f.add(out[i], f.mul(d, v[j]));
    }
  }
  return out;
}

/// Extend the rows of E (full rank r x n) to a basis of the ambient space by
/// greedily appending standard basis vectors that increase the rank. The
/// result is deterministic in E.
template <class F>
Matrix<F> adapted_basis(const Matrix<F>& e) {
  const F& f = e.field();
  int r = e.rows(), n = e.cols();
  if (rank(e) != r) throw RankDeficient("adapted_basis: rows are dependent");
  Matrix<F> p = e;
  int have = r;
  for (int j = 0; j < n && have < n; ++j) {
    Matrix<F> unit(f, 1, n);
    unit.at(0, j) = f.one();
    Matrix<F> cand = p.vstack(unit);
    if (rank(cand) == have + 1) {
      p = std::move(cand);
      ++have;
    }
  }
  return p;
}

/// Recover the common overlap of a restricted point: the kernel of the
/// 1-flattening of the Hodge contraction. Returns an r x n basis matrix;
/// throws UnexpectedKernelDim when the observed kernel dimension differs
/// (the point is not general of overlap exactly r).
template <class F>
Matrix<F> recover_overlap(const PlueckerVector<F>& w, int r) {
  auto fl = flatten1(hodge(w));
  auto basis = kernel(fl.mat.transposed());
  if (static_cast<int>(basis.size()) != r)
    throw UnexpectedKernelDim(r, static_cast<int>(basis.size()));
  Matrix<F> e(w.field, r, w.n);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < w.n; ++j) e.at(i, j) = basis[i][j];
  return e;
}

namespace detail {

inline MultiIndex shift_up(const MultiIndex& J, int r, int n) {
  uint64_t bits = J.bits << r;
  bits |= (uint64_t{1} << r) - 1;  // prepend the overlap block {0..r-1}
  return MultiIndex::from_bits(bits, n);
}

}  // namespace detail

/// Rewrite w in a basis adapted to E and strip the overlap block: the result
/// t is the degree-(k-r) form on the quotient coordinates with
/// embed_fiber(E, t) = w. Throws NotDivisible when some adapted coordinate
/// of w misses the overlap block.
template <class F>
PlueckerVector<F> fiber_coordinates(const PlueckerVector<F>& w,
                                    const Matrix<F>& e) {
  const F& f = w.field;
  int r = e.rows();
  if (e.cols() != w.n) throw SizeMismatch("fiber_coordinates: ambient mismatch");
  if (r > w.k) throw InvalidParams("overlap rank exceeds form degree");
  Matrix<F> p = adapted_basis(e);
  Matrix<F> pinv_t = inverse(p).transposed();
  auto adapted = wedge_apply(pinv_t, w.k, std::span(w.coords));
  auto subs = subsets_lex(w.n, w.k);
  uint64_t block = (uint64_t{1} << r) - 1;
  PlueckerVector<F> t(f, w.n - r, w.k - r);
  for (size_t i = 0; i < subs.size(); ++i) {
    if (f.is_zero(adapted[i])) continue;
    if ((subs[i].bits & block) != block)
      throw NotDivisible("form is not divisible by the overlap block");
    MultiIndex rest =
        MultiIndex::from_bits((subs[i].bits & ~block) >> r, w.n - r);
    t[rest] = adapted[i];
  }
  return t;
}

/// Wedge the overlap block onto a quotient form: lifts t through the adapted
/// basis of E and returns the Plücker vector of e_1 ^ ... ^ e_r ^ t in
/// standard coordinates. Throws RankDeficient when E has dependent rows.
template <class F>
PlueckerVector<F> embed_fiber(const Matrix<F>& e, const PlueckerVector<F>& t) {
  const F& f = e.field();
  int r = e.rows(), n = e.cols();
  if (t.n != n - r) throw SizeMismatch("embed_fiber: quotient dim mismatch");
  if (rank(e) != r) throw RankDeficient("embed_fiber: rows are dependent");
  int k = r + t.k;
  Matrix<F> p = adapted_basis(e);
  std::vector<typename F::Elem> lifted(
      static_cast<size_t>(binomial(n, k)), f.zero());
  auto quot = subsets_lex(n - r, t.k);
  for (size_t j = 0; j < quot.size(); ++j) {
    if (f.is_zero(t.coords[j])) continue;
    lifted[static_cast<size_t>(rank_lex(detail::shift_up(quot[j], r, n)))] =
        t.coords[j];
  }
  auto std_coords = wedge_apply(p.transposed(), k, std::span(lifted));
  PlueckerVector<F> w(f, n, k);
  w.coords = std::move(std_coords);
  return w;
}

/// Coordinate lookup with an arbitrary index word: zero on repeats, else the
/// sign of the sorting permutation times the stored coordinate.
template <class F>
typename F::Elem pluecker_coord_signed(const PlueckerVector<F>& v,
                                       std::span<const int> word) {
  std::vector<int> idx(word.begin(), word.end());
  int swaps = 0;
  for (size_t i = 0; i < idx.size(); ++i)
    for (size_t j = i + 1; j < idx.size(); ++j) {
      if (idx[i] == idx[j]) return v.field.zero();
      if (idx[i] > idx[j]) {
        std::swap(idx[i], idx[j]);
        ++swaps;
      }
    }
  const auto& c = v[MultiIndex::from_list(idx, v.n)];
  return swaps % 2 == 0 ? c : v.field.neg(c);
}

/// If a = c * b for a scalar c, returns c; empty otherwise. A zero b matches
/// only a zero a (with c = 0).
template <class F>
std::optional<typename F::Elem> proportionality_scalar(
    const PlueckerVector<F>& a, const PlueckerVector<F>& b) {
  const F& f = a.field;
  if (a.n != b.n || a.k != b.k) return std::nullopt;
  int pivot = -1;
  for (size_t i = 0; i < b.coords.size(); ++i)
    if (!f.is_zero(b.coords[i])) {
      pivot = static_cast<int>(i);
      break;
    }
  if (pivot < 0) return a.is_zero() ? std::optional(f.zero()) : std::nullopt;
  auto c = f.mul(a.coords[pivot], f.inv(b.coords[pivot]));
  for (size_t i = 0; i < b.coords.size(); ++i)
    if (!f.eq(a.coords[i], f.mul(c, b.coords[i]))) return std::nullopt;
  return c;
}

}  // namespace grassdim
