#pragma once

#include <cstdint>

#include "msr/rational.hpp"

namespace msr {

// (n,k,d) code shape plus the subsymbol granularity m, field modulus q and
// the construction seed. Admissible when 1 <= k < n and k <= d <= n-1.
struct CodeParams {
  uint32_t n = 0;
  uint32_t k = 0;
  uint32_t d = 0;
  uint32_t m = 1;
  uint64_t q = 65537;
  uint64_t seed = 0;
};

// Errc::inadmissible on bad shape, non-prime q or m == 0.
void validate_params(const CodeParams& p);

// Quantities derived from the parameters. Counting in subsymbols: a unit
// symbol splits into B = m^N subsymbols of 1/m^N capacity each, a node keeps
// alpha_sub = (d-k+1)*B of them, the file is M_sub = k*alpha_sub in total
// (M_units = k*(d-k+1) unit symbols).
struct DerivedParams {
  uint32_t N = 0;          // (k-1)(d-k+1)
  uint64_t B = 1;          // m^N
  uint64_t alpha_sub = 0;  // (d-k+1) * B
  uint64_t unit_len = 0;   // == alpha_sub
  uint64_t M_sub = 0;      // k * alpha_sub
  uint64_t M_units = 0;    // k * (d-k+1)
};

DerivedParams derive_params(const CodeParams& p);

// Minimum-storage point of the storage/repair-bandwidth tradeoff for a file
// of `file_units` units: alpha = M/k, gamma = (M/k) * d/(d-k+1), beta = gamma/d.
struct CutsetPoint {
  Rational alpha;
  Rational gamma;
  Rational beta;
};

CutsetPoint cutset_point(uint32_t n, uint32_t k, uint32_t d,
                         const Rational& file_units);

uint64_t pow_u64_checked(uint64_t base, uint32_t e);  // Errc::overflow

}  // namespace msr
