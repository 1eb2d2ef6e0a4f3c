#include "msr/field.hpp"

namespace msr {

namespace {

uint64_t mulmod(uint64_t a, uint64_t b, uint64_t n) {
  return static_cast<uint64_t>((static_cast<__uint128_t>(a) * b) % n);
}

uint64_t powmod(uint64_t a, uint64_t e, uint64_t n) {
  uint64_t r = 1 % n;
  a %= n;
  while (e) {
    if (e & 1) r = mulmod(r, a, n);
    a = mulmod(a, a, n);
    e >>= 1;
  }
  return r;
}

}  // namespace

// Deterministic Miller-Rabin; this base set is exact for all 64-bit inputs.
bool is_prime_u64(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                     23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                     23ull, 29ull, 31ull, 37ull}) {
    uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

Field::Field(uint64_t q) : q_(q) {
  if (q < 2) fail(Errc::bad_argument, "field modulus must be at least 2");
  if (q >= (1ull << 63))
    fail(Errc::bad_argument, "field modulus must fit in 63 bits");
  if (!is_prime_u64(q))
    fail(Errc::bad_argument, "field modulus must be prime");
}

uint64_t Field::inv(uint64_t a) const {
  if (a == 0) fail(Errc::zero_inverse, "zero has no inverse in GF(q)");
  // extended Euclid on (q, a); q prime and 0 < a < q ends with gcd 1
  __int128 t0 = 0, t1 = 1;
  uint64_t r0 = q_, r1 = a % q_;
  while (r1 != 0) {
    const uint64_t quot = r0 / r1;
    const uint64_t r2 = r0 - quot * r1;
    r0 = r1;
    r1 = r2;
    const __int128 t2 = t0 - static_cast<__int128>(quot) * t1;
    t0 = t1;
    t1 = t2;
  }
  __int128 t = t0 % static_cast<__int128>(q_);
  if (t < 0) t += static_cast<__int128>(q_);
  return static_cast<uint64_t>(t);
}

uint64_t Field::pow(uint64_t a, uint64_t e) const {
  return powmod(a % q_, e, q_);
}

}  // namespace msr
