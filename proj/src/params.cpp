#include "msr/params.hpp"

#include "msr/error.hpp"
#include "msr/field.hpp"

namespace msr {

uint64_t pow_u64_checked(uint64_t base, uint32_t e) {
  uint64_t r = 1;
  for (uint32_t i = 0; i < e; ++i) {
    if (base != 0 && r > UINT64_MAX / base)
      fail(Errc::overflow, "integer power overflows 64 bits");
    r *= base;
  }
  return r;
}

void validate_params(const CodeParams& p) {
  if (p.k < 1 || p.k >= p.n)
    fail(Errc::inadmissible, "need 1 <= k < n");
  if (p.d < p.k || p.d > p.n - 1)
    fail(Errc::inadmissible, "need k <= d <= n-1");
  if (p.m < 1) fail(Errc::inadmissible, "need m >= 1");
  if (!is_prime_u64(p.q) || p.q >= (1ull << 63))
    fail(Errc::inadmissible, "q must be a prime below 2^63");
}

DerivedParams derive_params(const CodeParams& p) {
  validate_params(p);
  DerivedParams dp;
  dp.N = (p.k - 1) * (p.d - p.k + 1);
  dp.B = pow_u64_checked(p.m, dp.N);
  const uint64_t alpha_units = p.d - p.k + 1;
  if (dp.B > UINT64_MAX / alpha_units)
    fail(Errc::overflow, "alpha_sub overflows 64 bits");
  dp.alpha_sub = alpha_units * dp.B;
  dp.unit_len = dp.alpha_sub;
  if (dp.alpha_sub > UINT64_MAX / p.k)
    fail(Errc::overflow, "M_sub overflows 64 bits");
  dp.M_sub = p.k * dp.alpha_sub;
  dp.M_units = static_cast<uint64_t>(p.k) * alpha_units;
  return dp;
}

CutsetPoint cutset_point(uint32_t n, uint32_t k, uint32_t d,
                         const Rational& file_units) {
  CodeParams p;
  p.n = n;
  p.k = k;
  p.d = d;
  validate_params(p);
  if (file_units <= 0) fail(Errc::inadmissible, "file size must be positive");
  CutsetPoint cp;
  cp.alpha = file_units / k;
  cp.gamma = cp.alpha * d / (d - k + 1);
  cp.beta = cp.gamma / d;
  return cp;
}

}  // namespace msr
