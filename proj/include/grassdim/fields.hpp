#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "grassdim/errors.hpp"
#include "grassdim/rng.hpp"

namespace grassdim {

/// Arbitrary-precision rational, always kept in canonical form
/// (gcd-reduced, positive denominator).
using Rational = mpq_class;

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
bool is_prime_u64(uint64_t n);

/// Uniformly chosen prime in [2^30, 2^31).
uint64_t random_prime31(Rng& rng);

enum class FieldKind { Rationals, PrimeField };

/// Which exact field a computation runs over, plus the seed that makes
/// random sampling reproducible. Immutable; share freely across threads.
struct FieldSpec {
  FieldKind kind = FieldKind::Rationals;
  uint64_t modulus = 0;  // prime; meaningful iff kind == PrimeField
  uint64_t seed = 0;

  static FieldSpec rationals(uint64_t seed = 0) {
    return FieldSpec{FieldKind::Rationals, 0, seed};
  }

  /// Throws InvalidParams unless 2 <= modulus < 2^31 and modulus is prime.
  static FieldSpec prime_field(uint64_t modulus, uint64_t seed = 0);

  /// Prime mode with a random 31-bit modulus derived from the seed.
  static FieldSpec auto_prime(uint64_t seed);

  bool is_prime_mode() const { return kind == FieldKind::PrimeField; }
};

// ---------------------------------------------------------------------------
// Field contexts. Exact linear algebra is templated on a context type F
// providing: F::Elem, zero/one/from_int, add/sub/mul/neg/inv, is_zero, eq,
// random(Rng&) and str(). inv throws ZeroInverse on zero input.
// ---------------------------------------------------------------------------

/// The rationals. Random elements are uniform integers in
/// [-kRandomBound, kRandomBound]; integral points keep determinant
/// arithmetic in big-integer territory.
class RationalField {
 public:
  using Elem = Rational;

  static constexpr int64_t kRandomBound = 1'000'000;

  Elem zero() const { return Rational(0); }
  Elem one() const { return Rational(1); }
  Elem from_int(long long v) const { return Rational(static_cast<long>(v)); }

  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  Elem neg(const Elem& a) const { return -a; }
  Elem inv(const Elem& a) const {
    if (a == 0) throw ZeroInverse();
    return 1 / a;
  }

  bool is_zero(const Elem& a) const { return a == 0; }
  bool eq(const Elem& a, const Elem& b) const { return a == b; }

  Elem random(Rng& rng) const {
    return from_int(rng.int_in(-kRandomBound, kRandomBound));
  }

  std::string str(const Elem& a) const { return a.get_str(); }
};

/// Z_p for a prime p < 2^31. Elements are least nonnegative residues in a
/// uint64_t; products of two residues then fit in 64 bits.
class PrimeField {
 public:
  using Elem = uint64_t;

  /// Throws InvalidParams unless 2 <= p < 2^31 and p is prime.
  explicit PrimeField(uint64_t p);

  uint64_t modulus() const { return p_; }

  Elem zero() const { return 0; }
  Elem one() const { return 1 % p_; }
  Elem from_int(long long v) const {
    long long r = v % static_cast<long long>(p_);
    if (r < 0) r += static_cast<long long>(p_);
    return static_cast<Elem>(r);
  }

  Elem add(Elem a, Elem b) const {
    Elem s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Elem sub(Elem a, Elem b) const { return a >= b ? a - b : a + p_ - b; }
  Elem mul(Elem a, Elem b) const { return (a * b) % p_; }
  Elem neg(Elem a) const { return a == 0 ? 0 : p_ - a; }
  Elem inv(Elem a) const;

  bool is_zero(Elem a) const { return a == 0; }
  bool eq(Elem a, Elem b) const { return a == b; }

  Elem random(Rng& rng) const { return rng.below(p_); }

  std::string str(Elem a) const { return std::to_string(a); }

  /// Image of a rational under reduction mod p. Throws ZeroInverse if the
  /// denominator vanishes mod p.
  Elem reduce(const Rational& q) const;

 private:
  uint64_t p_;
};

}  // namespace grassdim
