#pragma once

#include <cstdint>
#include <random>

namespace grassdim {

/// Deterministic 64-bit generator. Each concurrent task derives its own
/// stream from (seed, stream index), so parallel runs reproduce serial ones.
class Rng {
 public:
  explicit Rng(uint64_t seed, uint64_t stream = 0)
      : gen_(mix(mix(seed + 0x9e3779b97f4a7c15ULL) ^ mix(stream))) {}

  uint64_t next() { return gen_(); }

  /// Uniform in [0, bound); bound must be positive.
  uint64_t below(uint64_t bound) {
    return std::uniform_int_distribution<uint64_t>(0, bound - 1)(gen_);
  }

  /// Uniform integer in [lo, hi], inclusive.
  int64_t int_in(int64_t lo, int64_t hi) {
    return std::uniform_int_distribution<int64_t>(lo, hi)(gen_);
  }

 private:
  // splitmix64 finalizer; decorrelates nearby seeds and stream indices.
  static uint64_t mix(uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::mt19937_64 gen_;
};

}  // namespace grassdim
