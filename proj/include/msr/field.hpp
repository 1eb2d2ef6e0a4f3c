#pragma once

#include <cstdint>

#include "msr/error.hpp"

namespace msr {

bool is_prime_u64(uint64_t n);

// Prime field GF(q). Elements are plain residues in [0, q); the field object
// carries the modulus so values stay one machine word.
class Field {
 public:
  explicit Field(uint64_t q);

  uint64_t modulus() const { return q_; }
  uint64_t reduce(uint64_t v) const { return v % q_; }

  uint64_t add(uint64_t a, uint64_t b) const {
    const uint64_t s = a + b;
    return s >= q_ ? s - q_ : s;
  }
  uint64_t sub(uint64_t a, uint64_t b) const {
    return a >= b ? a - b : a + (q_ - b);
  }
  uint64_t neg(uint64_t a) const { return a == 0 ? 0 : q_ - a; }
  uint64_t mul(uint64_t a, uint64_t b) const {
    return static_cast<uint64_t>((static_cast<__uint128_t>(a) * b) % q_);
  }

  uint64_t inv(uint64_t a) const;  // extended Euclid; Errc::zero_inverse on 0
  uint64_t pow(uint64_t a, uint64_t e) const;

  bool operator==(const Field&) const = default;

 private:
  uint64_t q_;
};

}  // namespace msr
