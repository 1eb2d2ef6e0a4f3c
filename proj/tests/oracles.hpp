// Brute-force reference computations kept independent of the library's
// elimination routines.
#pragma once

#include <cstdint>
#include <vector>

#include "msr/code.hpp"
#include "msr/matrix.hpp"

namespace oracle {

// Determinant by cofactor expansion along the first row.
inline uint64_t det_cofactor(const msr::Field& f, const msr::Matrix& m) {
  const size_t n = m.rows();
  if (n == 1) return m.at(0, 0);
  uint64_t acc = 0;
  for (size_t j = 0; j < n; ++j) {
    if (m.at(0, j) == 0) continue;
    msr::Matrix minor(f, n - 1, n - 1);
    for (size_t r = 1; r < n; ++r) {
      size_t cc = 0;
      for (size_t c = 0; c < n; ++c) {
        if (c == j) continue;
        minor.set(r - 1, cc++, m.at(r, c));
      }
    }
    const uint64_t term = f.mul(m.at(0, j), det_cofactor(f, minor));
    acc = (j % 2 == 0) ? f.add(acc, term) : f.sub(acc, term);
  }
  return acc;
}

// Rank as the largest s with a nonzero s x s minor, checking every minor.
inline size_t rank_by_minors(const msr::Field& f, const msr::Matrix& m) {
  const size_t rows = m.rows(), cols = m.cols();
  auto subsets = [](size_t total, size_t pick) {
    std::vector<std::vector<size_t>> out;
    std::vector<size_t> cur(pick);
    for (size_t i = 0; i < pick; ++i) cur[i] = i;
    while (true) {
      out.push_back(cur);
      size_t j = pick;
      bool done = true;
      while (j-- > 0) {
        if (cur[j] < total - (pick - 1 - j)) {
          ++cur[j];
          for (size_t t = j + 1; t < pick; ++t) cur[t] = cur[t - 1] + 1;
          done = false;
          break;
        }
      }
      if (done) return out;
    }
  };
  const size_t cap = rows < cols ? rows : cols;
  for (size_t s = cap; s >= 1; --s) {
    for (const auto& rsel : subsets(rows, s)) {
      for (const auto& csel : subsets(cols, s)) {
        msr::Matrix sub(f, s, s);
        for (size_t i = 0; i < s; ++i)
          for (size_t j = 0; j < s; ++j)
            sub.set(i, j, m.at(rsel[i], csel[j]));
        if (det_cofactor(f, sub) != 0) return s;
      }
    }
  }
  return 0;
}

// Decode a k-subset by solving the full stacked composite system, nothing
// shared with the per-position production path.
inline std::vector<uint64_t> decode_by_composite(
    const msr::CodeInstance& code, const std::vector<uint32_t>& subset,
    const std::vector<std::vector<uint64_t>>& blocks_by_node /* index id-1 */) {
  const msr::Matrix composite = msr::composite_matrix(code, subset);
  std::vector<uint64_t> stacked;
  for (uint32_t id : subset) {
    const auto& b = blocks_by_node[id - 1];
    stacked.insert(stacked.end(), b.begin(), b.end());
  }
  return composite.solve(stacked);
}

}  // namespace oracle
