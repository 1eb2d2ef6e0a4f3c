#pragma once

#include <cstdint>
#include <vector>

#include "msr/matrix.hpp"
#include "msr/params.hpp"

namespace msr {

// All vectors over {1..R}^N in lexicographic order, first coordinate most
// significant. N = 0 yields the single empty vector.
std::vector<std::vector<uint32_t>> enumerate_exponents(uint32_t N, uint32_t R);

// Projection matrices for an alignment repair. Column `e` of V is
// (prod_j gen_j^(e_j)) * w over exponents e in {1..m}^N with w the all-ones
// vector; Vbar extends the exponent range to {1..m+1}. Multiplying a V column
// by any generator lands exactly on a Vbar column (the exponent bumps by one),
// which is what makes interference cancellation a table lookup.
class ProjectionSet {
 public:
  ProjectionSet() = default;
  // dim is required when generators is empty (the k = 1 degenerate shape).
  ProjectionSet(const Field& field, std::vector<DiagonalMatrix> generators,
                uint32_t m, size_t dim = 0);

  const Matrix& V() const { return v_; }
  const Matrix& Vbar() const { return vbar_; }
  uint32_t m() const { return m_; }
  uint32_t exponent_count() const { return n_; }  // N
  size_t dim() const { return dim_; }
  const std::vector<DiagonalMatrix>& generators() const { return generators_; }
  uint64_t v_columns() const { return v_cols_; }        // m^N
  uint64_t vbar_columns() const { return vbar_cols_; }  // (m+1)^N
  const std::vector<uint32_t>& v_exponents(uint64_t col) const {
    return v_exps_[col];
  }

  // Index of the Vbar column equal to generators[g] * (column v_col of V).
  uint64_t vbar_index_after(uint64_t v_col, size_t g) const;

 private:
  Field field_{2};
  std::vector<DiagonalMatrix> generators_;
  uint32_t m_ = 1;
  uint32_t n_ = 0;
  size_t dim_ = 0;
  uint64_t v_cols_ = 0, vbar_cols_ = 0;
  Matrix v_, vbar_;
  std::vector<std::vector<uint32_t>> v_exps_;
};

ProjectionSet build_projection_sets(const Field& field,
                                    const std::vector<DiagonalMatrix>& generators,
                                    uint32_t m, size_t dim = 0);

}  // namespace msr
