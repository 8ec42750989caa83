#include "grassdim/fields.hpp"

namespace grassdim {

namespace {

uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t m) {
  return static_cast<uint64_t>(
      (static_cast<unsigned __int128>(a) * b) % m);
}

uint64_t powmod_u64(uint64_t a, uint64_t e, uint64_t m) {
  uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod_u64(r, a, m);
    a = mulmod_u64(a, a, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

bool is_prime_u64(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL,
                     23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // These twelve bases are a known deterministic witness set for all n < 2^64.
  for (uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL,
                     23ULL, 29ULL, 31ULL, 37ULL}) {
    uint64_t x = powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod_u64(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

uint64_t random_prime31(Rng& rng) {
  for (;;) {
    uint64_t c = (1ULL << 30) + rng.below(1ULL << 30);
    c |= 1;
    if (is_prime_u64(c)) return c;
  }
}

FieldSpec FieldSpec::prime_field(uint64_t modulus, uint64_t seed) {
  if (modulus < 2 || modulus >= (1ULL << 31))
    throw InvalidParams("prime modulus must lie in [2, 2^31)");
  if (!is_prime_u64(modulus))
    throw InvalidParams("modulus " + std::to_string(modulus) + " is not prime");
  return FieldSpec{FieldKind::PrimeField, modulus, seed};
}

FieldSpec FieldSpec::auto_prime(uint64_t seed) {
  Rng rng(seed, /*stream=*/0xF1E1D);
  return FieldSpec{FieldKind::PrimeField, random_prime31(rng), seed};
}

PrimeField::PrimeField(uint64_t p) : p_(p) {
  if (p < 2 || p >= (1ULL << 31))
    throw InvalidParams("prime modulus must lie in [2, 2^31)");
  if (!is_prime_u64(p))
    throw InvalidParams("modulus " + std::to_string(p) + " is not prime");
}

PrimeField::Elem PrimeField::inv(Elem a) const {
  a %= p_;
  if (a == 0) throw ZeroInverse();
  // Extended Euclid on (a, p).
  int64_t t = 0, newt = 1;
  int64_t r = static_cast<int64_t>(p_), newr = static_cast<int64_t>(a);
  while (newr != 0) {
    int64_t q = r / newr;
    t -= q * newt;
    std::swap(t, newt);
    r -= q * newr;
    std::swap(r, newr);
  }
  if (t < 0) t += static_cast<int64_t>(p_);
  return static_cast<Elem>(t);
}

PrimeField::Elem PrimeField::reduce(const Rational& q) const {
  mpz_class num_m = q.get_num() % static_cast<long>(p_);
  mpz_class den_m = q.get_den() % static_cast<long>(p_);
  long num = num_m.get_si();
  long den = den_m.get_si();
  if (num < 0) num += static_cast<long>(p_);
  if (den < 0) den += static_cast<long>(p_);
  return mul(static_cast<Elem>(num), inv(static_cast<Elem>(den)));
}

}  // namespace grassdim
