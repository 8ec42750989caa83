#pragma once

#include <optional>
#include <string>

#include "grassdim/combinat.hpp"
#include "grassdim/errors.hpp"

namespace grassdim {

/// The tuple (n, k, s, r) identifying a restricted secant variety: sums of
/// s points of Gr(k, n) whose planes share an overlap of dimension >= r.
struct SecantParams {
  int n = 0;
  int k = 0;
  int s = 1;
  int r = 0;

  void validate() const {
    if (!(0 <= r && r <= k && k <= n && s >= 1))
      throw InvalidParams("secant params require 0 <= r <= k <= n and s >= 1");
  }

  bool operator==(const SecantParams&) const = default;

  std::string str() const {
    return "(n=" + std::to_string(n) + ", k=" + std::to_string(k) +
           ", s=" + std::to_string(s) + ", r=" + std::to_string(r) + ")";
  }
};

/// Smallest ambient dimension admitting a fully independent general point:
/// r basis vectors for the overlap plus k-r fresh ones per summand.
inline int stability_step(int k, int s, int r) { return r + s * (k - r); }

/// Literal stable-range dimension count r(p-r) + s(k-r)(p-k) + s-1 + p(n-p)
/// with p the stability step. This is a virtual (pre-defect) count; it can
/// exceed both the rank oracle and the fiber prediction on defective cases,
/// so report it alongside the others rather than in place of them.
/// Throws BelowStability when n < p.
long long stability_dim_formula(int n, int k, int s, int r);

/// min(dim of the ambient projective space, s dim Gr + s - 1).
long long secant_expected_dim(int n, int k, int s);

enum class DimSource { Expected, SkewFamily, Sporadic };

struct SecantDim {
  long long dim = 0;
  long long defect = 0;  // expected - dim
  DimSource source = DimSource::Expected;
};

/// Dimension of the s-secant of Gr(k, n) assuming the known defect list is
/// complete. Duality normalizes k to min(k, n-k) first; the Gr(2, n) family
/// (rank <= 2s skew forms) is a formula, the four sporadic cases are data,
/// every other case equals the expected dimension.
SecantDim secant_dim_conjectural(int n, int k, int s);

struct ForcedOverlap {
  int r = 0;
  bool applied = false;  // the s = 2 Grassmann bound was in force
};

/// For s = 2 two k-planes in n-space intersect in at least 2k - n
/// dimensions, so the overlap is raised to max(r, 2k - n). For s != 2 the
/// pairwise-forced intersections need not be common and r passes through.
ForcedOverlap forced_overlap(int n, int k, int r, int s);

/// Dimension of the restricted incidence variety, uncapped:
/// r(n-r) + s(k-r)(n-k) + s - 1.
long long restricted_virtual_dim(int n, int k, int s, int r);

/// Virtual count capped by the ambient projective dimension.
long long restricted_expected_dim_general(int n, int k, int s, int r);

/// The s = 2 special case r(n-r) + 2(k-r)(n-k) + 1, capped; callers are
/// expected to have forced r already.
long long restricted_expected_dim(int n, int k, int r);

struct FiberDim {
  long long dim = 0;
  bool assumes_conjecture = false;  // a defect-table row or its completeness
};

/// Fiber-bundle prediction: base Gr(r, n) plus the secant of the quotient
/// Grassmannian, capped by the ambient space. Collapsed cases (one summand,
/// or overlap within one of the planes' codimension-one subspaces) return
/// dim Gr(k, n) outright. For s = 2 the overlap is forced first.
FiberDim fiber_predicted_dim(int n, int k, int s, int r);

/// Everything the closed forms can say about one parameter tuple.
struct Prediction {
  SecantParams params;
  int stability_step = 0;
  std::optional<long long> stable_family_dim;  // absent when n < p
  long long virtual_dim = 0;
  long long expected_dim = 0;
  long long fiber_dim = 0;
  bool assumes_conjecture = false;
  int forced_r = 0;

  bool operator==(const Prediction&) const = default;
};

Prediction predict(const SecantParams& params);

/// Comparison of an oracle answer with the predictions.
struct DefectSummary {
  long long expected = 0;
  long long fiber = 0;
  long long actual = 0;
  long long defect = 0;  // expected - actual
  bool is_defective = false;
  bool fiber_match = false;
};

DefectSummary defect_summary(const SecantParams& params, long long actual_proj);

}  // namespace grassdim
