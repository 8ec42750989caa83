#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "grassdim/exterior.hpp"
#include "grassdim/fields.hpp"
#include "grassdim/formulas.hpp"
#include "grassdim/linalg.hpp"
#include "grassdim/rng.hpp"

namespace grassdim {

// ---------------------------------------------------------------------------
// Sampling.
// ---------------------------------------------------------------------------

/// A random point of the restricted secant parametrization: r shared rows
/// plus s tail blocks of k-r rows each. Stack i is [shared; tails[i]].
template <class F>
struct SamplePoint {
  SecantParams params;
  Matrix<F> shared;                // r x n
  std::vector<Matrix<F>> tails;    // s matrices, each (k-r) x n

  Matrix<F> stack(int i) const { return shared.vstack(tails[i]); }
};

inline constexpr int kSampleRetries = 32;

// Column layout of the Jacobian: shared variables (i, j) first in row-major
// order, then per-summand tail variables. Fixing this order makes the block
// structure reproducible and lets the symbolic and cofactor paths agree
// entrywise.
inline int variable_count(const SecantParams& p) {
  return p.r * p.n + p.s * (p.k - p.r) * p.n;
}
inline int shared_variable(const SecantParams& p, int i, int j) {
  return i * p.n + j;
}
inline int tail_variable(const SecantParams& p, int m, int i, int j) {
  return p.r * p.n + (m * (p.k - p.r) + i) * p.n + j;
}

/// Draw random blocks until every stack has rank k and the full stack has
/// rank min(n, r + s(k-r)); at most kSampleRetries attempts, after which
/// DegenerateAfterRetries signals a field too small for the parameters.
template <class F>
SamplePoint<F> sample_point(const SecantParams& params, const F& f, Rng& rng) {
  params.validate();
  const int n = params.n, k = params.k, s = params.s, r = params.r;
  for (int attempt = 0; attempt < kSampleRetries; ++attempt) {
    Matrix<F> shared(f, r, n);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < n; ++j) shared.at(i, j) = f.random(rng);
    std::vector<Matrix<F>> tails;
    tails.reserve(s);
    for (int m = 0; m < s; ++m) {
      Matrix<F> t(f, k - r, n);
      for (int i = 0; i < k - r; ++i)
        for (int j = 0; j < n; ++j) t.at(i, j) = f.random(rng);
      tails.push_back(std::move(t));
    }
    SamplePoint<F> p{params, std::move(shared), std::move(tails)};
    bool ok = true;
    for (int m = 0; m < s && ok; ++m) ok = rank(p.stack(m)) == k;
    if (ok) {
      Matrix<F> full = p.shared;
      for (int m = 0; m < s; ++m) full = full.vstack(p.tails[m]);
      ok = rank(full) == std::min(n, r + s * (k - r));
    }
    if (ok) return p;
  }
  throw DegenerateAfterRetries("no nondegenerate sample after " +
                               std::to_string(kSampleRetries) + " draws");
}

/// Sum of the Plücker vectors of the s stacks.
template <class F>
PlueckerVector<F> pluecker_sum(const SamplePoint<F>& p) {
  const F& f = p.shared.field();
  PlueckerVector<F> out(f, p.params.n, p.params.k);
  for (int m = 0; m < p.params.s; ++m) {
    auto v = pluecker(p.stack(m));
    for (size_t i = 0; i < out.coords.size(); ++i)
      out.coords[i] = f.add(out.coords[i], v.coords[i]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Cofactor Jacobian.
// ---------------------------------------------------------------------------

/// Jacobian of the restricted parametrization at p, of shape
/// C(n,k) x (rn + s(k-r)n). Entry at Plücker row I and variable (i, j) of
/// stack m is 0 when j is outside I and otherwise
/// (-1)^(pos_I(j) + i) det(stack_m without row i, columns I \ {j});
/// shared-variable columns accumulate that value over all s stacks.
/// Minor determinants are tabulated once per (stack, dropped row, column
/// set) so each is evaluated a single time.
template <class F>
Matrix<F> jacobian(const SamplePoint<F>& p) {
  const F& f = p.shared.field();
  const int n = p.params.n, k = p.params.k, s = p.params.s, r = p.params.r;
  auto subs = subsets_lex(n, k);
  auto subs1 = subsets_lex(n, k - 1);
  const size_t c1 = subs1.size();
  const int k1 = k > 0 ? k - 1 : 0;

  // Flattened column lists of the (k-1)-subsets, and of the k-subsets
  // together with the lex ranks of their single-element deletions.
  std::vector<int> cols1(c1 * k1);
  for (size_t t = 0; t < c1; ++t) {
    int w = 0;
    for (int c : subs1[t].entries()) cols1[t * k1 + w++] = c;
  }
  std::vector<int> cols(subs.size() * k);
  std::vector<size_t> deletion_rank(subs.size() * k);
  for (size_t ri = 0; ri < subs.size(); ++ri) {
    int w = 0;
    for (int c : subs[ri].entries()) {
      cols[ri * k + w] = c;
      deletion_rank[ri * k + w] =
          static_cast<size_t>(rank_lex(subs[ri].without(c)));
      ++w;
    }
  }

  Matrix<F> jac(f, static_cast<int>(subs.size()), variable_count(p.params));
  std::vector<typename F::Elem> rest(static_cast<size_t>(k1) * n, f.zero());
  std::vector<typename F::Elem> ws(static_cast<size_t>(k1) * k1, f.zero());
  std::vector<typename F::Elem> minors(static_cast<size_t>(k) * c1, f.zero());
  for (int m = 0; m < s; ++m) {
    Matrix<F> stack = p.stack(m);
    for (int i = 0; i < k; ++i) {
      int out = 0;
      for (int ii = 0; ii < k; ++ii) {
        if (ii == i) continue;
        for (int j = 0; j < n; ++j)
          rest[static_cast<size_t>(out) * n + j] = stack.at(ii, j);
        ++out;
      }
      for (size_t t = 0; t < c1; ++t) {
        const int* cs = &cols1[t * k1];
        for (int a = 0; a < k1; ++a)
          for (int b = 0; b < k1; ++b)
            ws[static_cast<size_t>(a) * k1 + b] =
                rest[static_cast<size_t>(a) * n + cs[b]];
        minors[static_cast<size_t>(i) * c1 + t] =
            detail::det_in_place(f, ws.data(), k1);
      }
    }
    for (size_t ri = 0; ri < subs.size(); ++ri) {
      for (int pos = 0; pos < k; ++pos) {
        int j = cols[ri * k + pos];
        size_t t = deletion_rank[ri * k + pos];
        for (int i = 0; i < k; ++i) {
          const auto& minor = minors[static_cast<size_t>(i) * c1 + t];
          if (f.is_zero(minor)) continue;
          auto val = (pos + i) % 2 == 0 ? minor : f.neg(minor);
          if (i < r) {
            auto& cell = jac.at(static_cast<int>(ri),
                                shared_variable(p.params, i, j));
            cell = f.add(cell, val);
          } else {
            jac.at(static_cast<int>(ri),
                   tail_variable(p.params, m, i - r, j)) = val;
          }
        }
      }
    }
  }
  return jac;
}

// ---------------------------------------------------------------------------
// Dimension oracle.
// ---------------------------------------------------------------------------

struct DimensionReport {
  SecantParams params;
  int cone_dim = 0;
  int proj_dim = -1;
  int trials = 0;
  std::vector<uint64_t> primes_used;  // empty in rational mode
  bool agreed = false;                // every trial produced the same rank
  Prediction predicted;
  long long defect = 0;               // expected - proj

  bool operator==(const DimensionReport&) const = default;
};

/// Max Jacobian rank over `trials` independent sample points; prime mode
/// additionally repeats everything over a second independently derived
/// 31-bit prime. Rank can only drop at special points or bad primes, so the
/// max is the dimension of the cone and `agreed` records whether every
/// trial already matched.
DimensionReport dimension(const SecantParams& params, const FieldSpec& field,
                          int trials, int threads = 1);

// ---------------------------------------------------------------------------
// Naive symbolic path. Kept as an oracle for the cofactor Jacobian and for
// the benchmark; guard rails are hard limits, not heuristics.
// ---------------------------------------------------------------------------

/// Multilinear polynomial with integer coefficients in variables indexed by
/// the Jacobian column layout.
class Poly {
 public:
  using Monomial = std::vector<int>;  // sorted, distinct variable ids

  static Poly zero() { return Poly{}; }
  static Poly constant(long long c);
  static Poly variable(int id);

  Poly& add_term(Monomial m, long long coeff);
  Poly plus(const Poly& o) const;
  Poly negated() const;
  /// Multiply by a variable absent from every monomial.
  Poly times_variable(int id) const;
  Poly derivative(int id) const;

  bool is_zero() const { return terms_.empty(); }
  size_t term_count() const { return terms_.size(); }
  const std::map<Monomial, long long>& terms() const { return terms_; }
  bool operator==(const Poly&) const = default;

  template <class F>
  typename F::Elem eval(const F& f,
                        std::span<const typename F::Elem> values) const {
    auto acc = f.zero();
    for (const auto& [mono, coeff] : terms_) {
      auto term = f.from_int(coeff);
      for (int id : mono) term = f.mul(term, values[id]);
      acc = f.add(acc, term);
    }
    return acc;
  }

  std::string str() const;

 private:
  std::map<Monomial, long long> terms_;
};

/// Expanded symbolic Jacobian: every entry is the partial derivative of a
/// coordinate polynomial, stored as a sum of monomials.
struct SymbolicJacobian {
  SecantParams params;
  int rows = 0;
  int cols = 0;
  std::vector<Poly> coords;   // C(n,k) coordinate polynomials
  std::vector<Poly> entries;  // row-major, rows x cols

  const Poly& entry(int row, int col) const {
    return entries[static_cast<size_t>(row) * cols + col];
  }

  /// Substitute a sample's entries for the variables.
  template <class F>
  Matrix<F> evaluate_at(const SamplePoint<F>& p) const {
    if (!(p.params == params))
      throw ParamMismatch("sample does not match symbolic Jacobian params");
    const F& f = p.shared.field();
    std::vector<typename F::Elem> values(
        static_cast<size_t>(variable_count(params)), f.zero());
    for (int i = 0; i < params.r; ++i)
      for (int j = 0; j < params.n; ++j)
        values[shared_variable(params, i, j)] = p.shared.at(i, j);
    for (int m = 0; m < params.s; ++m)
      for (int i = 0; i < params.k - params.r; ++i)
        for (int j = 0; j < params.n; ++j)
          values[tail_variable(params, m, i, j)] = p.tails[m].at(i, j);
    Matrix<F> out(f, rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j)
        out.at(i, j) = entry(i, j).eval(f, std::span(values));
    return out;
  }
};

/// Guard rails: C(n,k) <= 40 and variable count <= 40, otherwise TooLarge.
SymbolicJacobian symbolic_jacobian(const SecantParams& params);

// ---------------------------------------------------------------------------
// Benchmark.
// ---------------------------------------------------------------------------

struct BenchResult {
  SecantParams params;
  double cofactor_ms = -1;
  double naive_ms = -1;    // -1 when skipped
  double speedup = -1;     // naive / cofactor, -1 when skipped
  bool naive_skipped = false;
  std::string naive_skip_reason;
  int cofactor_rank = -1;
  int naive_rank = -1;
};

/// Wall-clock comparison of one full rank query through each path. The
/// naive path rebuilds its symbolic Jacobian per query, which is exactly
/// what makes it lose; it is only attempted inside the guard rails.
BenchResult benchmark(const SecantParams& params, const FieldSpec& field);

}  // namespace grassdim
