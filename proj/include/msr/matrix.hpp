#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

#include "msr/error.hpp"
#include "msr/field.hpp"

namespace msr {

// Dense row-major matrix over GF(q). All elimination is exact; pivoting picks
// the first nonzero entry, which is as good as any other choice over a field.
class Matrix {
 public:
  Matrix() : field_(2) {}
  Matrix(const Field& field, size_t rows, size_t cols)
      : field_(field), rows_(rows), cols_(cols), a_(rows * cols, 0) {}

  static Matrix identity(const Field& field, size_t n);
  static Matrix from_rows(const Field& field,
                          std::initializer_list<std::initializer_list<uint64_t>> rows);

  const Field& field() const { return field_; }
  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }

  uint64_t at(size_t r, size_t c) const { return a_[r * cols_ + c]; }
  void set(size_t r, size_t c, uint64_t v) { a_[r * cols_ + c] = v; }

  Matrix mul(const Matrix& rhs) const;
  std::vector<uint64_t> mul_vec(std::span<const uint64_t> v) const;
  Matrix add(const Matrix& rhs) const;
  Matrix sub(const Matrix& rhs) const;
  Matrix transpose() const;
  Matrix hcat(const Matrix& rhs) const;

  size_t rank() const;
  Matrix inverse() const;  // Errc::singular when rank < dim

  // Unique x with A·x = y for a full-column-rank A (rows >= cols allowed).
  // Errc::inconsistent when y is outside the column span, Errc::singular when
  // the columns are dependent.
  std::vector<uint64_t> solve(std::span<const uint64_t> y) const;

  bool operator==(const Matrix& rhs) const {
    return field_ == rhs.field_ && rows_ == rhs.rows_ && cols_ == rhs.cols_ &&
           a_ == rhs.a_;
  }

 private:
  void swap_rows(size_t i, size_t j);

  Field field_;
  size_t rows_ = 0, cols_ = 0;
  std::vector<uint64_t> a_;
};

// Compact form of the dim×dim matrix with `diag` on the main diagonal.
// Products of these commute, which the repair projections rely on.
class DiagonalMatrix {
 public:
  DiagonalMatrix(const Field& field, std::vector<uint64_t> diag)
      : field_(field), diag_(std::move(diag)) {}

  static DiagonalMatrix identity(const Field& field, size_t dim) {
    return DiagonalMatrix(field, std::vector<uint64_t>(dim, 1));
  }

  const Field& field() const { return field_; }
  size_t dim() const { return diag_.size(); }
  const std::vector<uint64_t>& diag() const { return diag_; }
  uint64_t entry(size_t i) const { return diag_[i]; }

  bool all_nonzero() const;
  DiagonalMatrix mul(const DiagonalMatrix& rhs) const;
  DiagonalMatrix pow(uint64_t e) const;
  DiagonalMatrix inverse() const;  // Errc::singular on any zero entry
  std::vector<uint64_t> apply(std::span<const uint64_t> v) const;
  Matrix dense() const;

  bool operator==(const DiagonalMatrix& rhs) const {
    return field_ == rhs.field_ && diag_ == rhs.diag_;
  }

 private:
  Field field_;
  std::vector<uint64_t> diag_;
};

}  // namespace msr
