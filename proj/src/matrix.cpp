#include "msr/matrix.hpp"

#include <algorithm>

namespace msr {

Matrix Matrix::identity(const Field& field, size_t n) {
  Matrix m(field, n, n);
  for (size_t i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

Matrix Matrix::from_rows(
    const Field& field,
    std::initializer_list<std::initializer_list<uint64_t>> rows) {
  const size_t r = rows.size();
  const size_t c = r == 0 ? 0 : rows.begin()->size();
  Matrix m(field, r, c);
  size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != c)
      fail(Errc::dimension_mismatch, "ragged initializer rows");
    size_t j = 0;
    for (uint64_t v : row) m.set(i, j++, field.reduce(v));
    ++i;
  }
  return m;
}

void Matrix::swap_rows(size_t i, size_t j) {
  if (i == j) return;
  for (size_t c = 0; c < cols_; ++c)
    std::swap(a_[i * cols_ + c], a_[j * cols_ + c]);
}

Matrix Matrix::mul(const Matrix& rhs) const {
  if (!(field_ == rhs.field_))
    fail(Errc::dimension_mismatch, "matrix product across different fields");
  if (cols_ != rhs.rows_)
    fail(Errc::dimension_mismatch, "matrix product shape mismatch");
  Matrix out(field_, rows_, rhs.cols_);
  for (size_t i = 0; i < rows_; ++i) {
    for (size_t t = 0; t < cols_; ++t) {
      const uint64_t f = at(i, t);
      if (f == 0) continue;
      for (size_t j = 0; j < rhs.cols_; ++j) {
        out.set(i, j, field_.add(out.at(i, j), field_.mul(f, rhs.at(t, j))));
      }
    }
  }
  return out;
}

std::vector<uint64_t> Matrix::mul_vec(std::span<const uint64_t> v) const {
  if (v.size() != cols_)
    fail(Errc::dimension_mismatch, "matrix-vector shape mismatch");
  std::vector<uint64_t> out(rows_, 0);
  for (size_t i = 0; i < rows_; ++i) {
    uint64_t acc = 0;
    for (size_t j = 0; j < cols_; ++j)
      acc = field_.add(acc, field_.mul(at(i, j), v[j]));
    out[i] = acc;
  }
  return out;
}

Matrix Matrix::add(const Matrix& rhs) const {
  if (!(field_ == rhs.field_) || rows_ != rhs.rows_ || cols_ != rhs.cols_)
    fail(Errc::dimension_mismatch, "matrix sum shape mismatch");
  Matrix out(field_, rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i)
    out.a_[i] = field_.add(a_[i], rhs.a_[i]);
  return out;
}

Matrix Matrix::sub(const Matrix& rhs) const {
  if (!(field_ == rhs.field_) || rows_ != rhs.rows_ || cols_ != rhs.cols_)
    fail(Errc::dimension_mismatch, "matrix difference shape mismatch");
  Matrix out(field_, rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i)
    out.a_[i] = field_.sub(a_[i], rhs.a_[i]);
  return out;
}

Matrix Matrix::transpose() const {
  Matrix out(field_, cols_, rows_);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols_; ++j) out.set(j, i, at(i, j));
  return out;
}

Matrix Matrix::hcat(const Matrix& rhs) const {
  if (!(field_ == rhs.field_) || rows_ != rhs.rows_)
    fail(Errc::dimension_mismatch, "hcat row mismatch");
  Matrix out(field_, rows_, cols_ + rhs.cols_);
  for (size_t i = 0; i < rows_; ++i) {
    for (size_t j = 0; j < cols_; ++j) out.set(i, j, at(i, j));
    for (size_t j = 0; j < rhs.cols_; ++j) out.set(i, cols_ + j, rhs.at(i, j));
  }
  return out;
}

size_t Matrix::rank() const {
  Matrix m = *this;
  size_t r = 0;
  for (size_t c = 0; c < cols_ && r < rows_; ++c) {
    size_t p = r;
    while (p < rows_ && m.at(p, c) == 0) ++p;
    if (p == rows_) continue;
    m.swap_rows(p, r);
    const uint64_t piv_inv = field_.inv(m.at(r, c));
    for (size_t i = r + 1; i < rows_; ++i) {
      const uint64_t f = m.at(i, c);
      if (f == 0) continue;
      const uint64_t scale = field_.mul(f, piv_inv);
      for (size_t j = c; j < cols_; ++j)
        m.set(i, j, field_.sub(m.at(i, j), field_.mul(scale, m.at(r, j))));
    }
    ++r;
  }
  return r;
}

Matrix Matrix::inverse() const {
  if (rows_ != cols_) fail(Errc::dimension_mismatch, "inverse of non-square");
  const size_t n = rows_;
  Matrix m = hcat(identity(field_, n));
  for (size_t c = 0; c < n; ++c) {
    size_t p = c;
    while (p < n && m.at(p, c) == 0) ++p;
    if (p == n) fail(Errc::singular, "matrix is singular");
    m.swap_rows(p, c);
    const uint64_t piv_inv = field_.inv(m.at(c, c));
    for (size_t j = c; j < 2 * n; ++j)
      m.set(c, j, field_.mul(m.at(c, j), piv_inv));
    for (size_t i = 0; i < n; ++i) {
      if (i == c) continue;
      const uint64_t f = m.at(i, c);
      if (f == 0) continue;
      for (size_t j = c; j < 2 * n; ++j)
        m.set(i, j, field_.sub(m.at(i, j), field_.mul(f, m.at(c, j))));
    }
  }
  Matrix out(field_, n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) out.set(i, j, m.at(i, n + j));
  return out;
}

std::vector<uint64_t> Matrix::solve(std::span<const uint64_t> y) const {
  if (y.size() != rows_)
    fail(Errc::dimension_mismatch, "solve rhs length mismatch");
  // Gauss-Jordan on [A | y]. Inconsistency is reported before rank
  // deficiency so that an unsatisfiable system is never labeled Singular.
  Matrix m(field_, rows_, cols_ + 1);
  for (size_t i = 0; i < rows_; ++i) {
    for (size_t j = 0; j < cols_; ++j) m.set(i, j, at(i, j));
    m.set(i, cols_, y[i]);
  }
  std::vector<size_t> pivot_row(cols_, SIZE_MAX);
  size_t r = 0;
  for (size_t c = 0; c < cols_ && r < rows_; ++c) {
    size_t p = r;
    while (p < rows_ && m.at(p, c) == 0) ++p;
    if (p == rows_) continue;
    m.swap_rows(p, r);
    const uint64_t piv_inv = field_.inv(m.at(r, c));
    for (size_t j = c; j <= cols_; ++j)
      m.set(r, j, field_.mul(m.at(r, j), piv_inv));
    for (size_t i = 0; i < rows_; ++i) {
      if (i == r) continue;
      const uint64_t f = m.at(i, c);
      if (f == 0) continue;
      for (size_t j = c; j <= cols_; ++j)
        m.set(i, j, field_.sub(m.at(i, j), field_.mul(f, m.at(r, j))));
    }
    pivot_row[c] = r;
    ++r;
  }
  for (size_t i = 0; i < rows_; ++i) {
    bool zero_row = true;
    for (size_t j = 0; j < cols_ && zero_row; ++j) zero_row = m.at(i, j) == 0;
    if (zero_row && m.at(i, cols_) != 0)
      fail(Errc::inconsistent, "rhs outside the column span");
  }
  if (r < cols_) fail(Errc::singular, "system is rank-deficient");
  std::vector<uint64_t> x(cols_);
  for (size_t c = 0; c < cols_; ++c) x[c] = m.at(pivot_row[c], cols_);
  return x;
}

bool DiagonalMatrix::all_nonzero() const {
  for (uint64_t v : diag_)
    if (v == 0) return false;
  return true;
}

DiagonalMatrix DiagonalMatrix::mul(const DiagonalMatrix& rhs) const {
  if (!(field_ == rhs.field_) || dim() != rhs.dim())
    fail(Errc::dimension_mismatch, "diagonal product shape mismatch");
  std::vector<uint64_t> out(dim());
  for (size_t i = 0; i < dim(); ++i) out[i] = field_.mul(diag_[i], rhs.diag_[i]);
  return DiagonalMatrix(field_, std::move(out));
}

DiagonalMatrix DiagonalMatrix::pow(uint64_t e) const {
  std::vector<uint64_t> out(dim());
  for (size_t i = 0; i < dim(); ++i) out[i] = field_.pow(diag_[i], e);
  return DiagonalMatrix(field_, std::move(out));
}

DiagonalMatrix DiagonalMatrix::inverse() const {
  std::vector<uint64_t> out(dim());
  for (size_t i = 0; i < dim(); ++i) {
    if (diag_[i] == 0) fail(Errc::singular, "diagonal entry is zero");
    out[i] = field_.inv(diag_[i]);
  }
  return DiagonalMatrix(field_, std::move(out));
}

std::vector<uint64_t> DiagonalMatrix::apply(std::span<const uint64_t> v) const {
  if (v.size() != dim())
    fail(Errc::dimension_mismatch, "diagonal apply shape mismatch");
  std::vector<uint64_t> out(dim());
  for (size_t i = 0; i < dim(); ++i) out[i] = field_.mul(diag_[i], v[i]);
  return out;
}

Matrix DiagonalMatrix::dense() const {
  Matrix m(field_, dim(), dim());
  for (size_t i = 0; i < dim(); ++i) m.set(i, i, diag_[i]);
  return m;
}

}  // namespace msr
