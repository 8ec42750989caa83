#include "grassdim/finite_codes.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <fstream>
#include <map>
#include <set>

namespace grassdim {

namespace {

mpz_class pow_z(long long q, int e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(q),
                static_cast<unsigned long>(e));
  return r;
}

}  // namespace

mpz_class count_points(int n, int k, long long q) {
  if (n < 0 || k < 0 || q < 2)
    throw InvalidParams("count_points requires n, k >= 0 and q >= 2");
  if (k > n) return 0;
  mpz_class num = 1, den = 1;
  for (int i = 0; i < k; ++i) {
    num *= pow_z(q, n - i) - 1;
    den *= pow_z(q, k - i) - 1;
  }
  return num / den;  // exact: Gaussian binomials are integers
}

// ---------------------------------------------------------------------------
// Point enumeration.
// ---------------------------------------------------------------------------

namespace {

uint32_t inv_mod(uint32_t a, uint32_t q) {
  int64_t t = 0, newt = 1, r = q, newr = a % q;
  while (newr != 0) {
    int64_t quot = r / newr;
    t -= quot * newt;
    std::swap(t, newt);
    r -= quot * newr;
    std::swap(r, newr);
  }
  if (t < 0) t += q;
  return static_cast<uint32_t>(t);
}

/// k x k determinant mod q of the selected columns of a k x n byte matrix.
uint32_t det_mod(const std::vector<uint8_t>& m, int n, int k,
                 const std::vector<int>& cols, uint32_t q) {
  std::vector<uint32_t> w(static_cast<size_t>(k) * k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      w[static_cast<size_t>(i) * k + j] = m[static_cast<size_t>(i) * n + cols[j]];
  uint32_t result = 1 % q;
  for (int col = 0; col < k; ++col) {
    int piv = -1;
    for (int i = col; i < k; ++i)
      if (w[static_cast<size_t>(i) * k + col] % q != 0) {
        piv = i;
        break;
      }
    if (piv < 0) return 0;
    if (piv != col) {
      for (int j = col; j < k; ++j)
        std::swap(w[static_cast<size_t>(piv) * k + j],
                  w[static_cast<size_t>(col) * k + j]);
      result = (result * (q - 1)) % q;
    }
    uint32_t pivot = w[static_cast<size_t>(col) * k + col] % q;
    result = (result * pivot) % q;
    uint32_t pinv = inv_mod(pivot, q);
    for (int i = col + 1; i < k; ++i) {
      uint32_t c = (w[static_cast<size_t>(i) * k + col] % q * pinv) % q;
      if (c == 0) continue;
      for (int j = col; j < k; ++j) {
        uint32_t sub = (c * (w[static_cast<size_t>(col) * k + j] % q)) % q;
        uint32_t& cell = w[static_cast<size_t>(i) * k + j];
        cell = (cell % q + q - sub) % q;
      }
    }
  }
  return result;
}

std::vector<uint8_t> pluecker_mod(const std::vector<uint8_t>& rref, int n,
                                  int k, uint32_t q) {
  auto subs = subsets_lex(n, k);
  std::vector<uint8_t> out(subs.size(), 0);
  for (size_t t = 0; t < subs.size(); ++t)
    out[t] = static_cast<uint8_t>(det_mod(rref, n, k, subs[t].entries(), q));
  // Normalize the first nonzero coordinate to 1.
  for (uint8_t c : out) {
    if (c == 0) continue;
    if (c != 1) {
      uint32_t s = inv_mod(c, q);
      for (auto& x : out) x = static_cast<uint8_t>((x * s) % q);
    }
    break;
  }
  return out;
}

}  // namespace

std::vector<FqGrassmannPoint> enumerate_points(int n, int k, uint32_t q) {
  if (n < 0 || k < 0 || k > n || q < 2)
    throw InvalidParams("enumerate_points requires 0 <= k <= n and q >= 2");
  if (!is_prime_u64(q))
    throw InvalidParams("enumerate_points requires prime q");
  mpz_class total = count_points(n, k, q);
  if (total > 1'000'000) throw TooLarge("more than 10^6 points to enumerate");

  std::vector<FqGrassmannPoint> points;
  points.reserve(total.get_ui());
  for (const auto& pivots : subsets_lex(n, k)) {
    auto pcols = pivots.entries();
    // Free positions: right of the row's pivot and not a pivot column.
    std::vector<std::pair<int, int>> free_pos;
    for (int i = 0; i < k; ++i)
      for (int j = pcols[i] + 1; j < n; ++j)
        if (!pivots.contains(j)) free_pos.emplace_back(i, j);

    std::vector<uint8_t> digits(free_pos.size(), 0);
    for (;;) {
      FqGrassmannPoint pt;
      pt.n = n;
      pt.k = k;
      pt.q = q;
      pt.rref.assign(static_cast<size_t>(k) * n, 0);
      for (int i = 0; i < k; ++i) pt.rref[static_cast<size_t>(i) * n + pcols[i]] = 1;
      for (size_t t = 0; t < free_pos.size(); ++t)
        pt.rref[static_cast<size_t>(free_pos[t].first) * n + free_pos[t].second] =
            digits[t];
      pt.pluecker = pluecker_mod(pt.rref, n, k, q);
      points.push_back(std::move(pt));
      // Odometer over the free entries.
      size_t t = 0;
      while (t < digits.size() && ++digits[t] == q) digits[t++] = 0;
      if (t == digits.size()) break;
    }
  }
  std::sort(points.begin(), points.end(),
            [](const FqGrassmannPoint& a, const FqGrassmannPoint& b) {
              return a.rref < b.rref;
            });
  return points;
}

Matrix<PrimeField> generator_matrix(int n, int k, uint32_t q) {
  auto points = enumerate_points(n, k, q);
  PrimeField f(q);
  Matrix<PrimeField> m(f, static_cast<int>(binomial(n, k)),
                       static_cast<int>(points.size()));
  for (size_t j = 0; j < points.size(); ++j)
    for (int i = 0; i < m.rows(); ++i)
      m.at(i, static_cast<int>(j)) = points[j].pluecker[static_cast<size_t>(i)];
  return m;
}

int grassmann_distance(const FqGrassmannPoint& a, const FqGrassmannPoint& b) {
  if (a.n != b.n || a.k != b.k || a.q != b.q)
    throw ParamMismatch("points live on different Grassmannians");
  PrimeField f(a.q);
  Matrix<PrimeField> stacked(f, 2 * a.k, a.n);
  for (int i = 0; i < a.k; ++i)
    for (int j = 0; j < a.n; ++j) {
      stacked.at(i, j) = a.rref_at(i, j);
      stacked.at(a.k + i, j) = b.rref_at(i, j);
    }
  int dim_sum = rank(stacked);
  int dim_meet = 2 * a.k - dim_sum;
  return a.k - dim_meet;
}

int hamming_distance_words(std::span<const uint8_t> u,
                           std::span<const uint8_t> v) {
  if (u.size() != v.size())
    throw LengthMismatch("codewords differ in length");
  int d = 0;
  for (size_t i = 0; i < u.size(); ++i) d += u[i] != v[i];
  return d;
}

int weight(std::span<const uint8_t> u) {
  int w = 0;
  for (uint8_t x : u) w += x != 0;
  return w;
}

// ---------------------------------------------------------------------------
// Orbits of the cubic exterior power of F_2^6.
// ---------------------------------------------------------------------------

namespace {

constexpr int kN = 6;

/// Row masks of a 6 x 6 matrix over F_2.
using Mat6 = std::array<uint8_t, kN>;

int det2_3x3(const Mat6& g, const std::vector<int>& rows,
             const std::vector<int>& cols) {
  // Parity of the permanent equals the determinant over F_2.
  int d = 0;
  static constexpr int perm[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                     {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  for (const auto& p : perm) {
    int prod = 1;
    for (int i = 0; i < 3; ++i)
      prod &= (g[rows[i]] >> cols[p[i]]) & 1;
    d ^= prod;
  }
  return d;
}

/// Induced action on the 20 coordinates: column J holds the image of basis
/// trivector J, so applying the map is an XOR over the set bits.
using Induced = std::array<uint32_t, kTrivectorDim>;

Induced induce(const Mat6& g) {
  auto subs = subsets_lex(kN, 3);
  Induced out{};
  for (size_t j = 0; j < subs.size(); ++j) {
    auto cols = subs[j].entries();
    uint32_t img = 0;
    for (size_t i = 0; i < subs.size(); ++i)
      if (det2_3x3(g, subs[i].entries(), cols)) img |= 1u << i;
    out[j] = img;
  }
  return out;
}

uint32_t apply_action(const Induced& g, uint32_t v) {
  uint32_t out = 0;
  while (v) {
    int b = std::countr_zero(v);
    out ^= g[b];
    v &= v - 1;
  }
  return out;
}

/// The 30 elementary transvections generate the full special linear group.
const std::vector<Induced>& transvection_actions() {
  static const std::vector<Induced> gens = [] {
    std::vector<Induced> out;
    for (int a = 0; a < kN; ++a)
      for (int b = 0; b < kN; ++b) {
        if (a == b) continue;
        Mat6 g{};
        for (int i = 0; i < kN; ++i) g[i] = static_cast<uint8_t>(1u << i);
        g[a] = static_cast<uint8_t>(g[a] | (1u << b));  // row a += row b
        out.push_back(induce(g));
      }
    return out;
  }();
  return gens;
}

std::vector<uint32_t> bfs_orbit(TrivectorMask seed,
                                std::vector<uint8_t>& visited) {
  const auto& gens = transvection_actions();
  std::vector<uint32_t> orbit;
  std::vector<uint32_t> frontier{seed};
  visited[seed] = 1;
  orbit.push_back(seed);
  while (!frontier.empty()) {
    std::vector<uint32_t> next;
    for (uint32_t v : frontier) {
      for (const auto& g : gens) {
        uint32_t w = apply_action(g, v);
        if (!visited[w]) {
          visited[w] = 1;
          orbit.push_back(w);
          next.push_back(w);
        }
      }
    }
    frontier = std::move(next);
  }
  std::sort(orbit.begin(), orbit.end());
  return orbit;
}

int det2_6x6(Mat6 g) {
  int r = 0;
  for (int col = 0; col < kN; ++col) {
    int piv = -1;
    for (int i = r; i < kN; ++i)
      if ((g[i] >> col) & 1) {
        piv = i;
        break;
      }
    if (piv < 0) return 0;
    std::swap(g[piv], g[r]);
    for (int i = r + 1; i < kN; ++i)
      if ((g[i] >> col) & 1) g[i] ^= g[r];
    ++r;
  }
  return 1;
}

const std::map<long long, std::string>& orbit_labels() {
  static const std::map<long long, std::string> labels = {
      {1395, "Gr"},         {54684, "sigma2^1"}, {468720, "tau"},
      {357120, "sigma2"},   {166656, "Xi"},
  };
  return labels;
}

}  // namespace

TrivectorMask trivector_from_triples(const std::string& expr) {
  auto subs = subsets_lex(kN, 3);
  TrivectorMask mask = 0;
  std::string token;
  auto flush = [&](const std::string& t) {
    if (t.empty()) throw InvalidParams("empty monomial in trivector expression");
    std::vector<int> idx;
    for (char c : t) {
      if (c < '0' || c > '5')
        throw InvalidParams("trivector indices must be digits 0..5");
      idx.push_back(c - '0');
    }
    if (idx.size() != 3)
      throw InvalidParams("each monomial needs exactly three indices");
    std::sort(idx.begin(), idx.end());
    if (idx[0] == idx[1] || idx[1] == idx[2])
      throw InvalidParams("repeated index in a monomial");
    mask ^= 1u << rank_lex(MultiIndex::from_list(idx, kN));
  };
  for (char c : expr) {
    if (c == ' ' || c == '\t') continue;
    if (c == '+') {
      flush(token);
      token.clear();
    } else {
      token += c;
    }
  }
  flush(token);
  return mask;
}

std::string trivector_str(TrivectorMask m) {
  auto subs = subsets_lex(kN, 3);
  std::string s;
  for (size_t i = 0; i < subs.size(); ++i) {
    if (!((m >> i) & 1)) continue;
    if (!s.empty()) s += "+";
    for (int e : subs[i].entries()) s += static_cast<char>('0' + e);
  }
  return s.empty() ? "0" : s;
}

std::vector<uint32_t> orbit_closure(TrivectorMask seed) {
  if (seed == 0 || seed >= kTrivectorSpace)
    throw InvalidParams("orbit seed must be a nonzero 20-bit mask");
  std::vector<uint8_t> visited(kTrivectorSpace, 0);
  return bfs_orbit(seed, visited);
}

std::vector<uint32_t> orbit_closure_randomized(TrivectorMask seed, Rng& rng,
                                               int stable_rounds) {
  if (seed == 0 || seed >= kTrivectorSpace)
    throw InvalidParams("orbit seed must be a nonzero 20-bit mask");
  std::set<uint32_t> known{seed};
  int stable = 0;
  while (stable < stable_rounds) {
    Mat6 g{};
    do {
      for (int i = 0; i < kN; ++i)
        g[i] = static_cast<uint8_t>(rng.below(1u << kN));
    } while (det2_6x6(g) == 0);
    Induced act = induce(g);
    size_t before = known.size();
    std::vector<uint32_t> batch(known.begin(), known.end());
    for (uint32_t v : batch) known.insert(apply_action(act, v));
    stable = known.size() == before ? stable + 1 : 0;
  }
  return {known.begin(), known.end()};
}

OrbitTable classify_all() {
  std::vector<uint8_t> visited(kTrivectorSpace, 0);
  OrbitTable table;
  for (uint32_t v = 1; v < kTrivectorSpace; ++v) {
    if (visited[v]) continue;
    auto orbit = bfs_orbit(v, visited);
    Orbit o;
    o.seed = v;  // ascending scan makes v the smallest member
    o.size = static_cast<long long>(orbit.size());
    auto it = orbit_labels().find(o.size);
    o.label = it != orbit_labels().end() ? it->second
                                         : "orbit-" + std::to_string(o.size);
    table.orbits.push_back(std::move(o));
  }
  return table;
}

FiberCountCheck fiber_count_check() {
  FiberCountCheck c;
  c.lines = (1 << 6) - 1;
  c.ambient_forms = (1 << 10) - 1;
  c.gr_points = count_points(5, 2, 2).get_si();
  c.lhs = c.lines * (c.ambient_forms - c.gr_points);
  c.rhs = static_cast<long long>(
      orbit_closure(trivector_from_triples("012+034")).size());
  c.equal = c.lhs == c.rhs;
  return c;
}

void export_orbit_binary(const std::string& path,
                         std::span<const uint32_t> masks) {
  std::vector<uint32_t> sorted(masks.begin(), masks.end());
  std::sort(sorted.begin(), sorted.end());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path + " for writing");
  for (uint32_t m : sorted) {
    uint8_t bytes[4] = {static_cast<uint8_t>(m & 0xff),
                        static_cast<uint8_t>((m >> 8) & 0xff),
                        static_cast<uint8_t>((m >> 16) & 0xff),
                        static_cast<uint8_t>((m >> 24) & 0xff)};
    out.write(reinterpret_cast<const char*>(bytes), 4);
  }
}

}  // namespace grassdim
