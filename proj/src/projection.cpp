#include "msr/projection.hpp"

namespace msr {

std::vector<std::vector<uint32_t>> enumerate_exponents(uint32_t N, uint32_t R) {
  if (R < 1) fail(Errc::bad_argument, "exponent range must be at least 1");
  const uint64_t count = pow_u64_checked(R, N);
  std::vector<std::vector<uint32_t>> out;
  out.reserve(count);
  std::vector<uint32_t> cur(N, 1);
  for (uint64_t i = 0; i < count; ++i) {
    out.push_back(cur);
    for (size_t j = N; j-- > 0;) {
      if (cur[j] < R) {
        ++cur[j];
        break;
      }
      cur[j] = 1;
    }
  }
  return out;
}

ProjectionSet::ProjectionSet(const Field& field,
                             std::vector<DiagonalMatrix> generators, uint32_t m,
                             size_t dim)
    : field_(field), generators_(std::move(generators)), m_(m) {
  if (m_ < 1) fail(Errc::bad_argument, "m must be at least 1");
  n_ = static_cast<uint32_t>(generators_.size());
  dim_ = dim != 0 ? dim : (n_ > 0 ? generators_[0].dim() : 0);
  if (dim_ == 0)
    fail(Errc::bad_argument, "projection set needs a dimension");
  for (const auto& g : generators_) {
    if (g.dim() != dim_)
      fail(Errc::dimension_mismatch, "generator dimension mismatch");
    if (!(g.field() == field_))
      fail(Errc::dimension_mismatch, "generator field mismatch");
  }
  v_cols_ = pow_u64_checked(m_, n_);
  vbar_cols_ = pow_u64_checked(m_ + 1, n_);

  // diag powers gen_j^p for p <= m+1; columns are elementwise products
  std::vector<std::vector<std::vector<uint64_t>>> pw(n_);
  for (size_t j = 0; j < n_; ++j) {
    pw[j].resize(m_ + 2);
    pw[j][0].assign(dim_, 1);
    for (uint32_t p = 1; p <= m_ + 1; ++p) {
      pw[j][p].resize(dim_);
      for (size_t t = 0; t < dim_; ++t)
        pw[j][p][t] = field_.mul(pw[j][p - 1][t], generators_[j].entry(t));
    }
  }

  auto build = [&](uint32_t range, Matrix& out,
                   std::vector<std::vector<uint32_t>>* keep_exps) {
    const auto exps = enumerate_exponents(n_, range);
    out = Matrix(field_, dim_, exps.size());
    for (size_t c = 0; c < exps.size(); ++c) {
      for (size_t t = 0; t < dim_; ++t) {
        uint64_t v = 1;
        for (size_t j = 0; j < n_; ++j) v = field_.mul(v, pw[j][exps[c][j]][t]);
        out.set(t, c, v);
      }
    }
    if (keep_exps) *keep_exps = exps;
  };
  build(m_, v_, &v_exps_);
  build(m_ + 1, vbar_, nullptr);
}

uint64_t ProjectionSet::vbar_index_after(uint64_t v_col, size_t g) const {
  const auto& e = v_exps_[v_col];
  uint64_t idx = 0;
  for (size_t j = 0; j < n_; ++j) {
    const uint32_t ej = e[j] + (j == g ? 1 : 0);
    idx = idx * (m_ + 1) + (ej - 1);
  }
  return idx;
}

ProjectionSet build_projection_sets(const Field& field,
                                    const std::vector<DiagonalMatrix>& generators,
                                    uint32_t m, size_t dim) {
  return ProjectionSet(field, generators, m, dim);
}

}  // namespace msr
