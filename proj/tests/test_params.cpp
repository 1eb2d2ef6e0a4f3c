#include <functional>

#include "doctest.h"
#include "msr/params.hpp"
#include "msr/repair.hpp"

using msr::CodeParams;
using msr::cutset_point;
using msr::derive_params;
using msr::Errc;
using msr::Error;
using msr::gamma_formula;
using msr::Rational;

namespace {
Errc code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::ok;
}

CodeParams make(uint32_t n, uint32_t k, uint32_t d, uint32_t m) {
  CodeParams p;
  p.n = n;
  p.k = k;
  p.d = d;
  p.m = m;
  return p;
}
}  // namespace

TEST_CASE("derived parameters") {
  const auto dp = derive_params(make(6, 3, 4, 2));
  CHECK(dp.N == 4);
  CHECK(dp.B == 16);
  CHECK(dp.alpha_sub == 32);
  CHECK(dp.M_sub == 96);
  CHECK(dp.M_units == 6);

  const auto dp2 = derive_params(make(4, 2, 3, 1));
  CHECK(dp2.N == 2);
  CHECK(dp2.B == 1);
  CHECK(dp2.alpha_sub == 2);
  CHECK(dp2.M_sub == 4);

  CHECK(code_of([] { derive_params(make(5, 3, 2, 1)); }) == Errc::inadmissible);
  CHECK(code_of([] { derive_params(make(5, 5, 5, 1)); }) == Errc::inadmissible);
  CHECK(code_of([] { derive_params(make(5, 3, 5, 1)); }) == Errc::inadmissible);
  CHECK(code_of([] { derive_params(make(5, 3, 3, 0)); }) == Errc::inadmissible);
  auto bad_q = make(5, 3, 3, 1);
  bad_q.q = 91;
  CHECK(code_of([&] { derive_params(bad_q); }) == Errc::inadmissible);
}

TEST_CASE("k = 1 degenerates to replication shapes") {
  const auto dp = derive_params(make(4, 1, 3, 7));
  CHECK(dp.N == 0);
  CHECK(dp.B == 1);
  CHECK(dp.alpha_sub == 3);
  CHECK(dp.M_units == 3);
}

TEST_CASE("cutset point") {
  const auto cp = cutset_point(6, 3, 4, Rational(6));
  CHECK(cp.alpha == Rational(2));
  CHECK(cp.gamma == Rational(4));
  CHECK(cp.beta == Rational(1));

  // naive repair downloads M; the ratio M/gamma is k(d-k+1)/d
  const auto big = cutset_point(31, 6, 30, Rational(150));
  CHECK(Rational(150) / big.gamma == Rational(5));

  // d = k collapses the saving: gamma = M
  const auto flat = cutset_point(5, 3, 3, Rational(6));
  CHECK(flat.gamma == Rational(6));

  CHECK(code_of([] { cutset_point(6, 3, 4, Rational(0)); }) ==
        Errc::inadmissible);
  CHECK(code_of([] { cutset_point(6, 3, 2, Rational(6)); }) ==
        Errc::inadmissible);
}

TEST_CASE("gamma formula values") {
  CHECK(gamma_formula(3, 4, 1) == Rational(34));
  CHECK(gamma_formula(3, 4, 2) == Rational(97, 8));
  CHECK(gamma_formula(2, 3, 1) == Rational(6));  // (4,2,3) at m=1
  CHECK(code_of([] { gamma_formula(3, 2, 1); }) == Errc::inadmissible);
  CHECK(code_of([] { gamma_formula(3, 4, 0); }) == Errc::inadmissible);
}

TEST_CASE("gamma decreases toward d") {
  Rational prev;
  for (uint32_t m = 1; m <= 64; ++m) {
    const Rational g = gamma_formula(3, 4, m);
    CHECK(g > Rational(4));
    if (m > 1) CHECK(g < prev);
    prev = g;
  }
  CHECK(gamma_formula(3, 4, 64) - Rational(4) <= Rational(13, 100));
  // k = 1 repairs at the bound for every m
  CHECK(gamma_formula(1, 3, 1) == Rational(3));
  CHECK(gamma_formula(1, 3, 9) == Rational(3));
}

TEST_CASE("rational rendering") {
  CHECK(msr::rational_str(Rational(34)) == "34");
  CHECK(msr::rational_str(Rational(97, 8)) == "97/8");
  CHECK(msr::rational_decimal(Rational(97, 8), 6) == "12.125000");
  CHECK(msr::rational_decimal(Rational(1, 3), 4) == "0.3333");
  CHECK(msr::rational_decimal(Rational(2, 3), 4) == "0.6667");
  CHECK(msr::rational_decimal(Rational(-1, 2), 2) == "-0.50");
  CHECK(msr::rational_decimal(Rational(5), 0) == "5");
  CHECK(msr::parse_rational("97/8") == Rational(97, 8));
  CHECK(msr::parse_rational("-3") == Rational(-3));
  CHECK(code_of([] { msr::parse_rational("1/0"); }) == Errc::parse_error);
  CHECK(code_of([] { msr::parse_rational("abc"); }) == Errc::parse_error);
}

TEST_CASE("checked power overflows loudly") {
  CHECK(msr::pow_u64_checked(2, 63) == (1ull << 63));
  CHECK(code_of([] { msr::pow_u64_checked(2, 64); }) == Errc::overflow);
  CHECK(msr::pow_u64_checked(7, 0) == 1);
}
