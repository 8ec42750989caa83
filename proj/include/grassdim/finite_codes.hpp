#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "grassdim/combinat.hpp"
#include "grassdim/errors.hpp"
#include "grassdim/linalg.hpp"
#include "grassdim/rng.hpp"

namespace grassdim {

/// A point of Gr(k, F_q^n): the unique reduced-row-echelon basis of its row
/// space, plus its Plücker vector with the first nonzero coordinate
/// normalized to 1.
struct FqGrassmannPoint {
  int n = 0;
  int k = 0;
  uint32_t q = 0;
  std::vector<uint8_t> rref;      // k x n, row-major
  std::vector<uint8_t> pluecker;  // C(n,k), lex coordinate order

  uint8_t rref_at(int i, int j) const {
    return rref[static_cast<size_t>(i) * n + j];
  }

  bool operator==(const FqGrassmannPoint&) const = default;
};

/// Gaussian binomial: number of k-planes in F_q^n. Accepts any integer
/// q >= 2 (the count formula needs no primality); returns 0 when k > n.
mpz_class count_points(int n, int k, long long q);

/// All points in a deterministic order (lexicographic on the flattened rref
/// entries). Requires prime q and count_points <= 10^6.
std::vector<FqGrassmannPoint> enumerate_points(int n, int k, uint32_t q);

/// Generator matrix of the Grassmann code: one normalized Plücker column
/// per point, in enumerate_points order. Shape C(n,k) x P.
Matrix<PrimeField> generator_matrix(int n, int k, uint32_t q);

/// d_G(A, B) = k - dim(A intersect B), computed from the rank of the
/// stacked bases.
int grassmann_distance(const FqGrassmannPoint& a, const FqGrassmannPoint& b);

/// Hamming distance between codewords of equal length.
int hamming_distance_words(std::span<const uint8_t> u,
                           std::span<const uint8_t> v);

/// w(u) = d(u, 0).
int weight(std::span<const uint8_t> u);

// ---------------------------------------------------------------------------
// The 20-dimensional cubic exterior power of F_2^6 and its matrix-group
// orbits.
// ---------------------------------------------------------------------------

/// Element of the 20-dimensional space, bit t of the mask being the
/// coordinate at subsets_lex(6,3)[t].
using TrivectorMask = uint32_t;

inline constexpr int kTrivectorDim = 20;
inline constexpr uint32_t kTrivectorSpace = 1u << kTrivectorDim;

/// Parse "+"-separated digit triples, e.g. "012+345"; addition is over F_2.
TrivectorMask trivector_from_triples(const std::string& expr);

std::string trivector_str(TrivectorMask m);

/// Exact orbit of seed under the special linear group of F_2^6: closure
/// under the 30 elementary transvections, breadth-first and deterministic.
/// Returns the sorted orbit; seed must be nonzero.
std::vector<uint32_t> orbit_closure(TrivectorMask seed);

/// The saturation method this replaces: repeatedly apply random invertible
/// matrices to the known set until its size stabilizes. Probabilistic; kept
/// for comparison against the exact closure.
std::vector<uint32_t> orbit_closure_randomized(TrivectorMask seed, Rng& rng,
                                               int stable_rounds = 8);

struct Orbit {
  TrivectorMask seed = 0;  // smallest member
  long long size = 0;
  std::string label;
};

struct OrbitTable {
  std::vector<Orbit> orbits;

  long long total() const {
    long long t = 0;
    for (const auto& o : orbits) t += o.size;
    return t;
  }
};

/// Partition the 2^20 - 1 nonzero masks into orbits: repeatedly close over
/// the smallest unclassified mask. Labels are matched to the known orbit
/// sizes; the dense-orbit census is complete exactly when the sizes sum to
/// 2^20 - 1.
OrbitTable classify_all();

struct FiberCountCheck {
  long long lines = 0;          // nonzero vectors of F_2^6
  long long ambient_forms = 0;  // nonzero 2-forms on F_2^5
  long long gr_points = 0;      // points of Gr(2, F_2^5)
  long long lhs = 0;            // lines * (ambient_forms - gr_points)
  long long rhs = 0;            // exhaustive orbit size of the overlap-1 seed
  bool equal = false;
};

/// Counts both sides of the base-times-fiber bijection for the overlap-1
/// orbit: 63 * (2^10 - 1 - 155) against the exhaustive orbit size.
FiberCountCheck fiber_count_check();

/// Orbit file layout: 4 bytes per element, 32-bit little-endian, sorted
/// ascending.
void export_orbit_binary(const std::string& path,
                         std::span<const uint32_t> masks);

}  // namespace grassdim
