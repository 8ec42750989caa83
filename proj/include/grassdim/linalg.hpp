#pragma once

#include <algorithm>
#include <cassert>
#include <string>
#include <utility>
#include <vector>

#include "grassdim/combinat.hpp"
#include "grassdim/errors.hpp"
#include "grassdim/fields.hpp"

namespace grassdim {

/// Dense row-major matrix over a field context F. Entries are kept in the
/// field's canonical form; instances are cheap values and safe to share
/// across threads once built.
template <class F>
class Matrix {
 public:
  using Elem = typename F::Elem;

  Matrix(F field, int rows, int cols)
      : rows_(rows),
        cols_(cols),
        field_(std::move(field)),
        a_(static_cast<size_t>(rows) * cols, field_.zero()) {
    if (rows < 0 || cols < 0) throw InvalidParams("negative matrix shape");
  }

  static Matrix identity(F field, int n) {
    Matrix m(field, n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = m.field_.one();
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const F& field() const { return field_; }

  Elem& at(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
  const Elem& at(int i, int j) const {
    return a_[static_cast<size_t>(i) * cols_ + j];
  }

  Matrix transposed() const {
    Matrix t(field_, cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
  }

  /// Rows of this matrix followed by the rows of other.
  Matrix vstack(const Matrix& other) const {
    if (other.cols_ != cols_) throw SizeMismatch("vstack: column mismatch");
    Matrix m(field_, rows_ + other.rows_, cols_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) m.at(i, j) = at(i, j);
    for (int i = 0; i < other.rows_; ++i)
      for (int j = 0; j < cols_; ++j) m.at(rows_ + i, j) = other.at(i, j);
    return m;
  }

  Matrix submatrix(const MultiIndex& rows, const MultiIndex& cols) const {
    auto rs = rows.entries();
    auto cs = cols.entries();
    for (int r : rs)
      if (r >= rows_) throw IndexOutOfRange("submatrix row out of range");
    for (int c : cs)
      if (c >= cols_) throw IndexOutOfRange("submatrix column out of range");
    Matrix m(field_, static_cast<int>(rs.size()), static_cast<int>(cs.size()));
    for (size_t i = 0; i < rs.size(); ++i)
      for (size_t j = 0; j < cs.size(); ++j) m.at(i, j) = at(rs[i], cs[j]);
    return m;
  }

  Matrix select_columns(const MultiIndex& cols) const {
    MultiIndex all_rows = MultiIndex::from_bits(
        rows_ == 64 ? ~uint64_t{0} : (uint64_t{1} << rows_) - 1, rows_);
    return submatrix(all_rows, cols);
  }

  /// Copy without the given row (for cofactor extraction).
  Matrix drop_row(int row) const {
    Matrix m(field_, rows_ - 1, cols_);
    int out = 0;
    for (int i = 0; i < rows_; ++i) {
      if (i == row) continue;
      for (int j = 0; j < cols_; ++j) m.at(out, j) = at(i, j);
      ++out;
    }
    return m;
  }

  bool operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
  }

  std::string str() const {
    std::string s;
    for (int i = 0; i < rows_; ++i) {
      s += "[";
      for (int j = 0; j < cols_; ++j) {
        if (j) s += " ";
        s += field_.str(at(i, j));
      }
      s += "]\n";
    }
    return s;
  }

 private:
  int rows_, cols_;
  F field_;
  std::vector<Elem> a_;
};

template <class F>
Matrix<F> matmul(const Matrix<F>& a, const Matrix<F>& b) {
  if (a.cols() != b.rows()) throw SizeMismatch("matmul: inner dim mismatch");
  const F& f = a.field();
  Matrix<F> c(f, a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      const auto& aik = a.at(i, k);
      if (f.is_zero(aik)) continue;
      for (int j = 0; j < b.cols(); ++j)
        c.at(i, j) = f.add(c.at(i, j), f.mul(aik, b.at(k, j)));
    }
  return c;
}

// ---------------------------------------------------------------------------
// Elimination kernels.
// ---------------------------------------------------------------------------

/// Reduce m to reduced row echelon form in place; returns the pivot columns.
/// Pivot choice is the first nonzero entry in each column (exact arithmetic
/// needs no numerical pivoting, and this keeps runs deterministic).
template <class F>
std::vector<int> rref_in_place(Matrix<F>& m) {
  const F& f = m.field();
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
    int piv = -1;
    for (int i = row; i < m.rows(); ++i)
      if (!f.is_zero(m.at(i, col))) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != row)
      for (int j = 0; j < m.cols(); ++j) std::swap(m.at(piv, j), m.at(row, j));
    auto s = f.inv(m.at(row, col));
    for (int j = col; j < m.cols(); ++j)
      m.at(row, j) = f.mul(s, m.at(row, j));
    for (int i = 0; i < m.rows(); ++i) {
      if (i == row || f.is_zero(m.at(i, col))) continue;
      auto c = m.at(i, col);
      for (int j = col; j < m.cols(); ++j)
        m.at(i, j) = f.sub(m.at(i, j), f.mul(c, m.at(row, j)));
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

/// Exact rank via forward elimination over the field.
template <class F>
int rank(const Matrix<F>& m) {
  const F& f = m.field();
  Matrix<F> w = m;
  int row = 0;
  for (int col = 0; col < w.cols() && row < w.rows(); ++col) {
    int piv = -1;
    for (int i = row; i < w.rows(); ++i)
      if (!f.is_zero(w.at(i, col))) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != row)
      for (int j = col; j < w.cols(); ++j) std::swap(w.at(piv, j), w.at(row, j));
    auto s = f.inv(w.at(row, col));
    for (int i = row + 1; i < w.rows(); ++i) {
      if (f.is_zero(w.at(i, col))) continue;
      auto c = f.mul(s, w.at(i, col));
      w.at(i, col) = f.zero();
      for (int j = col + 1; j < w.cols(); ++j)
        w.at(i, j) = f.sub(w.at(i, j), f.mul(c, w.at(row, j)));
    }
    ++row;
  }
  return row;
}

namespace detail {

/// Destructive determinant of the m x m row-major buffer a. Sizes up to 3
/// expand directly; larger ones eliminate in place.
template <class F>
typename F::Elem det_in_place(const F& f, typename F::Elem* a, int m) {
  if (m == 0) return f.one();
  if (m == 1) return a[0];
  if (m == 2) return f.sub(f.mul(a[0], a[3]), f.mul(a[1], a[2]));
  if (m == 3) {
    auto x = f.mul(a[0], f.sub(f.mul(a[4], a[8]), f.mul(a[5], a[7])));
    auto y = f.mul(a[1], f.sub(f.mul(a[3], a[8]), f.mul(a[5], a[6])));
    auto z = f.mul(a[2], f.sub(f.mul(a[3], a[7]), f.mul(a[4], a[6])));
    return f.add(f.sub(x, y), z);
  }
  auto result = f.one();
  for (int col = 0; col < m; ++col) {
    int piv = -1;
    for (int i = col; i < m; ++i)
      if (!f.is_zero(a[i * m + col])) {
        piv = i;
        break;
      }
    if (piv < 0) return f.zero();
    if (piv != col) {
      for (int j = col; j < m; ++j) std::swap(a[piv * m + j], a[col * m + j]);
      result = f.neg(result);
    }
    result = f.mul(result, a[col * m + col]);
    auto s = f.inv(a[col * m + col]);
    for (int i = col + 1; i < m; ++i) {
      if (f.is_zero(a[i * m + col])) continue;
      auto c = f.mul(s, a[i * m + col]);
      for (int j = col + 1; j < m; ++j)
        a[i * m + j] = f.sub(a[i * m + j], f.mul(c, a[col * m + j]));
    }
  }
  return result;
}

}  // namespace detail

/// Exact determinant via elimination with first-nonzero pivoting.
template <class F>
typename F::Elem det(const Matrix<F>& m) {
  if (m.rows() != m.cols()) throw NotSquare("det requires a square matrix");
  const F& f = m.field();
  int n = m.rows();
  std::vector<typename F::Elem> w(static_cast<size_t>(n) * n, f.zero());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) w[static_cast<size_t>(i) * n + j] = m.at(i, j);
  return detail::det_in_place(f, w.data(), n);
}

namespace detail {

/// Clear denominators row by row; returns the integer matrix and the product
/// of the row multipliers.
inline std::pair<std::vector<std::vector<mpz_class>>, mpz_class>
clear_denominators(const Matrix<RationalField>& m) {
  std::vector<std::vector<mpz_class>> w(m.rows(),
                                        std::vector<mpz_class>(m.cols()));
  mpz_class factor = 1;
  for (int i = 0; i < m.rows(); ++i) {
    mpz_class l = 1;
    for (int j = 0; j < m.cols(); ++j)
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m.at(i, j).get_den().get_mpz_t());
    for (int j = 0; j < m.cols(); ++j) {
      mpz_class scaled = m.at(i, j).get_num() * (l / m.at(i, j).get_den());
      w[i][j] = scaled;
    }
    factor *= l;
  }
  return {std::move(w), factor};
}

/// Fraction-free (Bareiss) forward elimination on an integer matrix.
/// Returns {rank, sign-adjusted last pivot}; every division is exact.
struct BareissResult {
  int rank = 0;
  mpz_class last_pivot = 1;  // det of the pivot minor, sign included
};

inline BareissResult bareiss_forward(std::vector<std::vector<mpz_class>>& w) {
  int rows = static_cast<int>(w.size());
  int cols = rows ? static_cast<int>(w[0].size()) : 0;
  mpz_class prev = 1;
  int sign = 1;
  int row = 0;
  for (int col = 0; col < cols && row < rows; ++col) {
    int piv = -1;
    for (int i = row; i < rows; ++i)
      if (w[i][col] != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != row) {
      std::swap(w[piv], w[row]);
      sign = -sign;
    }
    for (int i = row + 1; i < rows; ++i) {
      for (int j = col + 1; j < cols; ++j) {
        mpz_class t = w[row][col] * w[i][j] - w[i][col] * w[row][j];
        mpz_divexact(w[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      w[i][col] = 0;
    }
    prev = w[row][col];
    ++row;
  }
  BareissResult res;
  res.rank = row;
  res.last_pivot = sign > 0 ? prev : mpz_class(-prev);
  return res;
}

}  // namespace detail

/// Rational determinant through fraction-free Bareiss elimination on the
/// denominator-cleared integer matrix; avoids intermediate fraction blowup.
inline Rational det(const Matrix<RationalField>& m) {
  if (m.rows() != m.cols()) throw NotSquare("det requires a square matrix");
  if (m.rows() == 0) return Rational(1);
  auto [w, factor] = detail::clear_denominators(m);
  auto res = detail::bareiss_forward(w);
  if (res.rank < m.rows()) return Rational(0);
  Rational d(res.last_pivot, factor);
  d.canonicalize();
  return d;
}

inline int rank(const Matrix<RationalField>& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  auto [w, factor] = detail::clear_denominators(m);
  (void)factor;  // row scaling never changes rank
  return detail::bareiss_forward(w).rank;
}

/// Basis of the right null space: vectors v with M v = 0. The basis has
/// exactly cols - rank members.
template <class F>
std::vector<std::vector<typename F::Elem>> kernel(const Matrix<F>& m) {
  const F& f = m.field();
  Matrix<F> w = m;
  std::vector<int> pivots = rref_in_place(w);
  std::vector<bool> is_pivot(m.cols(), false);
  for (int p : pivots) is_pivot[p] = true;
  std::vector<std::vector<typename F::Elem>> basis;
  for (int fc = 0; fc < m.cols(); ++fc) {
    if (is_pivot[fc]) continue;
    std::vector<typename F::Elem> v(m.cols(), f.zero());
    v[fc] = f.one();
    for (size_t pr = 0; pr < pivots.size(); ++pr)
      v[pivots[pr]] = f.neg(w.at(static_cast<int>(pr), fc));
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Inverse via Gauss-Jordan; throws NotInvertible on singular input.
template <class F>
Matrix<F> inverse(const Matrix<F>& m) {
  if (m.rows() != m.cols()) throw NotSquare("inverse requires square input");
  const F& f = m.field();
  int n = m.rows();
  Matrix<F> aug(f, n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, n + i) = f.one();
  }
  auto pivots = rref_in_place(aug);
  if (static_cast<int>(pivots.size()) != n || pivots.back() != n - 1)
    throw NotInvertible("matrix is singular");
  Matrix<F> out(f, n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out.at(i, j) = aug.at(i, n + j);
  return out;
}

/// Determinant of the square submatrix selected by rows x cols.
template <class F>
typename F::Elem minor_det(const Matrix<F>& m, const MultiIndex& rows,
                           const MultiIndex& cols) {
  if (rows.size() != cols.size())
    throw SizeMismatch("minor_det: row and column sets differ in size");
  return det(m.submatrix(rows, cols));
}

}  // namespace grassdim
