#include "grassdim/terracini.hpp"

#include <algorithm>
#include <chrono>

#include "grassdim/parallel.hpp"

namespace grassdim {

// ---------------------------------------------------------------------------
// Poly.
// ---------------------------------------------------------------------------

Poly Poly::constant(long long c) {
  Poly p;
  if (c != 0) p.terms_[{}] = c;
  return p;
}

Poly Poly::variable(int id) {
  Poly p;
  p.terms_[{id}] = 1;
  return p;
}

Poly& Poly::add_term(Monomial m, long long coeff) {
  if (coeff == 0) return *this;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(std::move(m), coeff);
  } else {
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
  }
  return *this;
}

Poly Poly::plus(const Poly& o) const {
  Poly out = *this;
  for (const auto& [m, c] : o.terms_) out.add_term(m, c);
  return out;
}

Poly Poly::negated() const {
  Poly out;
  for (const auto& [m, c] : terms_) out.terms_[m] = -c;
  return out;
}

Poly Poly::times_variable(int id) const {
  Poly out;
  for (const auto& [m, c] : terms_) {
    Monomial mm = m;
    auto pos = std::lower_bound(mm.begin(), mm.end(), id);
    mm.insert(pos, id);
    out.terms_[std::move(mm)] = c;
  }
  return out;
}

Poly Poly::derivative(int id) const {
  Poly out;
  for (const auto& [m, c] : terms_) {
    auto pos = std::lower_bound(m.begin(), m.end(), id);
    if (pos == m.end() || *pos != id) continue;
    Monomial mm;
    mm.reserve(m.size() - 1);
    for (int v : m)
      if (v != id) mm.push_back(v);
    out.add_term(std::move(mm), c);
  }
  return out;
}

std::string Poly::str() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (const auto& [m, c] : terms_) {
    if (!s.empty()) s += " + ";
    s += std::to_string(c);
    for (int v : m) s += "*x" + std::to_string(v);
  }
  return s;
}

// ---------------------------------------------------------------------------
// Symbolic Jacobian.
// ---------------------------------------------------------------------------

namespace {

// Laplace expansion along the first row of a grid of variable ids.
Poly det_sym(const std::vector<std::vector<int>>& ids) {
  size_t k = ids.size();
  if (k == 0) return Poly::constant(1);
  if (k == 1) return Poly::variable(ids[0][0]);
  Poly acc = Poly::zero();
  for (size_t j = 0; j < k; ++j) {
    std::vector<std::vector<int>> minor;
    minor.reserve(k - 1);
    for (size_t i = 1; i < k; ++i) {
      std::vector<int> row;
      row.reserve(k - 1);
      for (size_t jj = 0; jj < k; ++jj)
        if (jj != j) row.push_back(ids[i][jj]);
      minor.push_back(std::move(row));
    }
    Poly term = det_sym(minor).times_variable(ids[0][j]);
    acc = acc.plus(j % 2 == 0 ? term : term.negated());
  }
  return acc;
}

}  // namespace

SymbolicJacobian symbolic_jacobian(const SecantParams& params) {
  params.validate();
  const int n = params.n, k = params.k, s = params.s, r = params.r;
  long long coords = binomial(n, k);
  int vars = variable_count(params);
  if (coords > 40 || vars > 40)
    throw TooLarge("symbolic path limited to C(n,k) <= 40 and <= 40 variables");

  SymbolicJacobian sj;
  sj.params = params;
  sj.rows = static_cast<int>(coords);
  sj.cols = vars;

  // Variable-id grid of stack m: shared rows first, then its tail rows.
  auto stack_ids = [&](int m) {
    std::vector<std::vector<int>> ids(k, std::vector<int>(n));
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < n; ++j)
        ids[i][j] = i < r ? shared_variable(params, i, j)
                          : tail_variable(params, m, i - r, j);
    return ids;
  };

  auto subs = subsets_lex(n, k);
  sj.coords.reserve(subs.size());
  for (const auto& I : subs) {
    Poly p = Poly::zero();
    for (int m = 0; m < s; ++m) {
      auto ids = stack_ids(m);
      std::vector<std::vector<int>> sel(k, std::vector<int>(k));
      auto cols = I.entries();
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) sel[i][j] = ids[i][cols[j]];
      p = p.plus(det_sym(sel));
    }
    sj.coords.push_back(std::move(p));
  }

  sj.entries.reserve(subs.size() * static_cast<size_t>(vars));
  for (const auto& coord : sj.coords)
    for (int v = 0; v < vars; ++v) sj.entries.push_back(coord.derivative(v));
  return sj;
}

// ---------------------------------------------------------------------------
// Dimension oracle.
// ---------------------------------------------------------------------------

namespace {

constexpr uint64_t kRankOracleMinPrime = 1ULL << 20;

template <class F>
int one_rank_trial(const SecantParams& params, const F& f, Rng& rng) {
  auto sp = sample_point(params, f, rng);
  return rank(jacobian(sp));
}

}  // namespace

DimensionReport dimension(const SecantParams& params, const FieldSpec& field,
                          int trials, int threads) {
  params.validate();
  if (trials < 2) throw InvalidParams("dimension requires trials >= 2");
  if (binomial(params.n, params.k) > (1 << 20))
    throw TooLarge("Plücker coordinate space too large");

  DimensionReport rep;
  rep.params = params;
  rep.trials = trials;

  if (field.is_prime_mode()) {
    if (field.modulus < kRankOracleMinPrime)
      throw InvalidParams("rank oracle requires a prime >= 2^20");
    rep.primes_used.push_back(field.modulus);
    Rng prng(field.seed, 0x5ECD);
    uint64_t p2 = random_prime31(prng);
    while (p2 == field.modulus) p2 = random_prime31(prng);
    rep.primes_used.push_back(p2);
  }

  const int lanes = field.is_prime_mode() ? 2 : 1;
  const int tasks = lanes * trials;
  std::vector<int> ranks(tasks, -1);
  parallel_for(tasks, threads, [&](int t) {
    Rng rng(field.seed, 1 + static_cast<uint64_t>(t));
    if (field.is_prime_mode()) {
      PrimeField f(rep.primes_used[static_cast<size_t>(t) / trials]);
      ranks[t] = one_rank_trial(params, f, rng);
    } else {
      ranks[t] = one_rank_trial(params, RationalField{}, rng);
    }
  });

  rep.cone_dim = *std::max_element(ranks.begin(), ranks.end());
  rep.agreed = std::all_of(ranks.begin(), ranks.end(),
                           [&](int x) { return x == rep.cone_dim; });
  rep.proj_dim = rep.cone_dim - 1;
  rep.predicted = predict(params);
  rep.defect = rep.predicted.expected_dim - rep.proj_dim;
  return rep;
}

// ---------------------------------------------------------------------------
// Benchmark.
// ---------------------------------------------------------------------------

namespace {

/// Milliseconds per run: one untimed warmup, then enough repetitions to
/// accumulate ~50 ms of wall clock.
template <class Fn>
double time_path_ms(Fn&& fn) {
  using clock = std::chrono::steady_clock;
  fn();
  auto t0 = clock::now();
  fn();
  double once =
      std::chrono::duration<double, std::milli>(clock::now() - t0).count();
  int reps = once >= 50.0 ? 1 : std::min(2000, static_cast<int>(50.0 / std::max(once, 1e-4)) + 1);
  t0 = clock::now();
  for (int i = 0; i < reps; ++i) fn();
  double total =
      std::chrono::duration<double, std::milli>(clock::now() - t0).count();
  return total / reps;
}

template <class F>
BenchResult benchmark_impl(const SecantParams& params, const F& f,
                           uint64_t seed) {
  Rng rng(seed, 0xBE7C);
  auto sp = sample_point(params, f, rng);
  BenchResult res;
  res.params = params;
  res.cofactor_ms = time_path_ms([&] {
    auto jac = jacobian(sp);
    res.cofactor_rank = rank(jac);
  });
  try {
    // Rebuild the expanded symbolic Jacobian inside the timed region: the
    // naive path pays for differentiation on every query.
    res.naive_ms = time_path_ms([&] {
      auto sym = symbolic_jacobian(params);
      auto jac = sym.evaluate_at(sp);
      res.naive_rank = rank(jac);
    });
    res.speedup = res.naive_ms / res.cofactor_ms;
  } catch (const TooLarge& e) {
    res.naive_skipped = true;
    res.naive_skip_reason = e.what();
  }
  return res;
}

}  // namespace

BenchResult benchmark(const SecantParams& params, const FieldSpec& field) {
  params.validate();
  if (field.is_prime_mode())
    return benchmark_impl(params, PrimeField(field.modulus), field.seed);
  return benchmark_impl(params, RationalField{}, field.seed);
}

}  // namespace grassdim
