#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>

namespace msr {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt bigint_pow(const BigInt& base, uint32_t e) {
  return boost::multiprecision::pow(base, e);
}

// "34" when integral, "97/8" otherwise (canonical lowest terms).
std::string rational_str(const Rational& r);

// Fixed-point decimal rendering, rounded half away from zero.
std::string rational_decimal(const Rational& r, unsigned digits);

// Accepts "p" or "p/q"; Errc::parse_error on anything else or q == 0.
Rational parse_rational(const std::string& text);

}  // namespace msr
