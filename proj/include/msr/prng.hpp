#pragma once

#include <cstdint>

namespace msr {

// Deterministic stream generator keyed by (seed, stream). Descriptor files
// record the generator id, so an instance rebuilt from (seed, attempt) on any
// platform draws bit-identical values.
class CounterRng {
 public:
  static constexpr const char* kGeneratorId = "splitmix64-v1";

  CounterRng(uint64_t seed, uint64_t stream)
      : state_(mix(seed ^ mix(stream ^ 0x9e3779b97f4a7c15ull))) {}

  uint64_t next() {
    state_ += 0x9e3779b97f4a7c15ull;
    return mix(state_);
  }

  // Uniform over [0, n), rejection sampled so there is no modulo bias.
  uint64_t below(uint64_t n) {
    const uint64_t rem = (0 - n) % n;  // 2^64 mod n
    uint64_t x = next();
    if (rem != 0) {
      const uint64_t limit = 0 - rem;
      while (x >= limit) x = next();
    }
    return x % n;
  }

  // Uniform over {1, ..., q-1}.
  uint64_t nonzero(uint64_t q) { return 1 + below(q - 1); }

 private:
  static uint64_t mix(uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  uint64_t state_;
};

}  // namespace msr
