#include "doctest.h"
#include "msr/field.hpp"
#include "msr/prng.hpp"

using msr::CounterRng;
using msr::Errc;
using msr::Error;
using msr::Field;

TEST_CASE("basic modular ops") {
  Field gf7(7);
  CHECK(gf7.add(3, 5) == 1);
  Field gf5(5);
  CHECK(gf5.mul(2, 3) == 1);
  CHECK(gf5.sub(1, 3) == 3);
  CHECK(gf5.neg(0) == 0);
  CHECK(gf5.neg(2) == 3);
}

TEST_CASE("inverses") {
  Field gf5(5);
  CHECK(gf5.inv(2) == 3);
  CHECK(gf5.inv(1) == 1);
  CHECK_THROWS_AS(gf5.inv(0), Error);
  try {
    gf5.inv(0);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::zero_inverse);
  }
}

TEST_CASE("field constructor rejects bad moduli") {
  CHECK_THROWS_AS(Field(1), Error);
  CHECK_THROWS_AS(Field(6), Error);
  CHECK_THROWS_AS(Field(65536), Error);
  CHECK_NOTHROW(Field(2));
  CHECK_NOTHROW(Field(65537));
}

TEST_CASE("primality") {
  CHECK(msr::is_prime_u64(2));
  CHECK(msr::is_prime_u64(65537));
  CHECK(msr::is_prime_u64(2305843009213693951ull));  // 2^61 - 1
  CHECK_FALSE(msr::is_prime_u64(1));
  CHECK_FALSE(msr::is_prime_u64(65535));
  CHECK_FALSE(msr::is_prime_u64(3215031751ull));  // strong pseudoprime to 2,3,5,7
}

TEST_CASE("field axioms on random triples, several moduli") {
  for (uint64_t q : {2ull, 3ull, 5ull, 65537ull, 2305843009213693951ull}) {
    Field f(q);
    CounterRng rng(42, q);
    for (int i = 0; i < 500; ++i) {
      const uint64_t a = rng.below(q), b = rng.below(q), c = rng.below(q);
      CHECK(f.add(a, b) == f.add(b, a));
      CHECK(f.mul(a, b) == f.mul(b, a));
      CHECK(f.add(f.add(a, b), c) == f.add(a, f.add(b, c)));
      CHECK(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
      CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
      CHECK(f.add(a, f.neg(a)) == 0);
      CHECK(f.sub(a, b) == f.add(a, f.neg(b)));
      if (a != 0) CHECK(f.mul(a, f.inv(a)) == 1);
    }
  }
}

TEST_CASE("pow matches repeated multiplication") {
  Field f(65537);
  CounterRng rng(7, 0);
  for (int i = 0; i < 50; ++i) {
    const uint64_t a = rng.below(65537);
    uint64_t acc = 1;
    for (uint64_t e = 0; e < 16; ++e) {
      CHECK(f.pow(a, e) == acc);
      acc = f.mul(acc, a);
    }
  }
}

TEST_CASE("counter rng is deterministic per (seed, stream)") {
  CounterRng a(123, 4), b(123, 4), c(123, 5);
  bool diverged = false;
  for (int i = 0; i < 100; ++i) {
    const uint64_t va = a.next();
    CHECK(va == b.next());
    if (va != c.next()) diverged = true;
  }
  CHECK(diverged);
}

TEST_CASE("rng nonzero stays in range") {
  CounterRng rng(9, 9);
  for (int i = 0; i < 1000; ++i) {
    const uint64_t v = rng.nonzero(5);
    CHECK(v >= 1);
    CHECK(v <= 4);
  }
  // q = 2 forces the single nonzero value
  CounterRng rng2(1, 1);
  for (int i = 0; i < 10; ++i) CHECK(rng2.nonzero(2) == 1);
}
