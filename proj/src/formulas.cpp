#include "grassdim/formulas.hpp"

#include <algorithm>

namespace grassdim {

namespace {

long long grass_dim(int k, int n) {
  return static_cast<long long>(k) * (n - k);
}

long long ambient_proj_dim(int n, int k) { return binomial(n, k) - 1; }

struct SporadicDefect {
  int n, k, s;
  long long codim;  // inside the ambient projective space
};

// Known sporadic defective secants, keyed by (n, min(k, n-k), s).
constexpr SporadicDefect kSporadicDefects[] = {
    {7, 3, 3, 1},
    {8, 4, 3, 20},
    {8, 4, 4, 6},
    {9, 3, 4, 10},
};

}  // namespace

long long stability_dim_formula(int n, int k, int s, int r) {
  SecantParams{n, k, s, r}.validate();
  int p = stability_step(k, s, r);
  if (n < p)
    throw BelowStability("ambient dimension " + std::to_string(n) +
                         " below stability step " + std::to_string(p));
  return static_cast<long long>(r) * (p - r) +
         static_cast<long long>(s) * ((k - r) * (p - k)) + (s - 1) +
         static_cast<long long>(p) * (n - p);
}

long long secant_expected_dim(int n, int k, int s) {
  if (!(1 <= k && k <= n && s >= 1))
    throw InvalidParams("secant_expected_dim requires 1 <= k <= n, s >= 1");
  return std::min(ambient_proj_dim(n, k), s * grass_dim(k, n) + s - 1);
}

SecantDim secant_dim_conjectural(int n, int k, int s) {
  if (!(1 <= k && k <= n && s >= 1))
    throw InvalidParams("secant_dim_conjectural requires 1 <= k <= n, s >= 1");
  long long big_n = ambient_proj_dim(n, k);
  long long expected = secant_expected_dim(n, k, s);
  int kk = std::min(k, n - k);
  if (kk == 2) {
    // Rank <= 2s skew forms: codimension C(n-2s, 2) in the ambient space,
    // zero (the locus fills) once n < 2s + 2.
    int m = n - 2 * s;
    long long dim = big_n - (m >= 2 ? binomial(m, 2) : 0);
    return {dim, expected - dim, DimSource::SkewFamily};
  }
  for (const auto& d : kSporadicDefects) {
    if (d.n == n && d.k == kk && d.s == s) {
      long long dim = big_n - d.codim;
      return {dim, expected - dim, DimSource::Sporadic};
    }
  }
  return {expected, 0, DimSource::Expected};
}

ForcedOverlap forced_overlap(int n, int k, int r, int s) {
  SecantParams{n, k, s, r}.validate();
  if (s != 2) return {r, false};
  int forced = std::clamp(std::max(r, 2 * k - n), 0, k);
  return {forced, true};
}

long long restricted_virtual_dim(int n, int k, int s, int r) {
  SecantParams{n, k, s, r}.validate();
  return static_cast<long long>(r) * (n - r) +
         static_cast<long long>(s) * (k - r) * (n - k) + (s - 1);
}

long long restricted_expected_dim_general(int n, int k, int s, int r) {
  return std::min(ambient_proj_dim(n, k), restricted_virtual_dim(n, k, s, r));
}

long long restricted_expected_dim(int n, int k, int r) {
  return restricted_expected_dim_general(n, k, 2, r);
}

FiberDim fiber_predicted_dim(int n, int k, int s, int r) {
  SecantParams{n, k, s, r}.validate();
  // One summand: the variety is the Grassmannian for every admissible r.
  if (s == 1) return {grass_dim(k, n), false};
  int re = (s == 2) ? forced_overlap(n, k, r, 2).r : r;
  for (;;) {
    // Overlap of dimension >= k-1 collapses the sum into a single plane.
    if (k - re <= 1) return {grass_dim(k, n), false};
    auto fib = secant_dim_conjectural(n - re, k - re, s);
    // Hidden forced overlap: when the fiber secant fills its ambient
    // exterior power and the generic form of that power is divisible by a
    // vector (degree two below an odd ambient dimension: the contraction
    // dual is a generic 2-form with a one-dimensional radical), every
    // point of the image carries an overlap one larger, so the r- and
    // (r+1)-restricted varieties coincide.
    int nq = n - re, kq = k - re;
    bool fills = fib.dim == ambient_proj_dim(nq, kq);
    if (fills && kq == nq - 2 && nq % 2 == 1) {
      ++re;
      continue;
    }
    long long dim = std::min(static_cast<long long>(re) * nq + fib.dim,
                             ambient_proj_dim(n, k));
    bool assumes = std::min(kq, n - k) >= 2;
    return {dim, assumes};
  }
}

Prediction predict(const SecantParams& params) {
  params.validate();
  Prediction p;
  p.params = params;
  p.stability_step = stability_step(params.k, params.s, params.r);
  if (params.n >= p.stability_step)
    p.stable_family_dim =
        stability_dim_formula(params.n, params.k, params.s, params.r);
  p.forced_r = forced_overlap(params.n, params.k, params.r, params.s).r;
  p.virtual_dim =
      restricted_virtual_dim(params.n, params.k, params.s, p.forced_r);
  p.expected_dim =
      restricted_expected_dim_general(params.n, params.k, params.s, p.forced_r);
  auto fib = fiber_predicted_dim(params.n, params.k, params.s, params.r);
  p.fiber_dim = fib.dim;
  p.assumes_conjecture = fib.assumes_conjecture;
  return p;
}

DefectSummary defect_summary(const SecantParams& params, long long actual_proj) {
  Prediction p = predict(params);
  DefectSummary d;
  d.expected = p.expected_dim;
  d.fiber = p.fiber_dim;
  d.actual = actual_proj;
  d.defect = d.expected - actual_proj;
  d.is_defective = d.defect > 0;
  d.fiber_match = (d.fiber == actual_proj);
  return d;
}

}  // namespace grassdim
