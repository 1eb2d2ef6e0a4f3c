#include "msr/code.hpp"

#include <algorithm>

#include "msr/prng.hpp"
#include "msr/repair.hpp"

namespace msr {

size_t MdsReport::passed() const {
  size_t n = 0;
  for (const auto& e : entries) n += e.ok ? 1 : 0;
  return n;
}

bool MdsReport::all_ok() const { return passed() == entries.size(); }

CodeInstance::CodeInstance(const CodeParams& params,
                           std::vector<DiagonalMatrix> submatrices, Kind kind,
                           uint32_t attempt)
    : params_(params),
      derived_(derive_params(params)),
      field_(params.q),
      submatrices_(std::move(submatrices)),
      kind_(kind),
      attempt_(attempt) {
  const size_t expected =
      static_cast<size_t>(params_.n - params_.k) * params_.k;
  if (submatrices_.size() != expected)
    fail(Errc::bad_argument, "submatrix count must be (n-k)*k");
  for (const auto& g : submatrices_) {
    if (g.dim() != derived_.alpha_sub)
      fail(Errc::dimension_mismatch, "submatrix dimension must be alpha_sub");
    if (!(g.field() == field_))
      fail(Errc::dimension_mismatch, "submatrix field mismatch");
    if (!g.all_nonzero())
      fail(Errc::bad_argument, "submatrix diagonals must be nonzero");
  }
}

const DiagonalMatrix& CodeInstance::submatrix(uint32_t parity_index,
                                              uint32_t unit_index) const {
  if (parity_index < 1 || parity_index > params_.n - params_.k ||
      unit_index < 1 || unit_index > params_.k)
    fail(Errc::bad_argument, "submatrix index out of range");
  return submatrices_[static_cast<size_t>(parity_index - 1) * params_.k +
                      (unit_index - 1)];
}

uint64_t CodeInstance::encoding_entry(uint32_t node, uint32_t unit,
                                      size_t position) const {
  if (node <= params_.k) return node == unit ? 1 : 0;
  return submatrix(node - params_.k, unit).entry(position);
}

std::vector<std::vector<uint64_t>> CodeInstance::encode(
    const std::vector<std::vector<uint64_t>>& units) const {
  if (units.size() != params_.k)
    fail(Errc::length_mismatch, "encode expects k information units");
  for (const auto& u : units)
    if (u.size() != derived_.alpha_sub)
      fail(Errc::length_mismatch, "unit length must be alpha_sub");
  std::vector<std::vector<uint64_t>> blocks;
  blocks.reserve(params_.n);
  for (uint32_t l = 0; l < params_.k; ++l) blocks.push_back(units[l]);
  for (uint32_t i = 1; i <= params_.n - params_.k; ++i) {
    std::vector<uint64_t> block(derived_.alpha_sub, 0);
    for (uint32_t l = 1; l <= params_.k; ++l) {
      const auto& g = submatrix(i, l);
      const auto& u = units[l - 1];
      for (size_t t = 0; t < block.size(); ++t)
        block[t] = field_.add(block[t], field_.mul(g.entry(t), u[t]));
    }
    blocks.push_back(std::move(block));
  }
  return blocks;
}

void CodeInstance::attach_reports(std::shared_ptr<const MdsReport> mds,
                                  std::shared_ptr<const RankReport> ranks) {
  mds_ = std::move(mds);
  ranks_ = std::move(ranks);
}

bool CodeInstance::verified() const {
  if (kind_ == Kind::scalar_baseline) return true;
  return mds_ && ranks_ && mds_->all_ok() && ranks_->all_ok();
}

bool CodeInstance::same_code(const CodeInstance& other) const {
  return params_.n == other.params_.n && params_.k == other.params_.k &&
         params_.d == other.params_.d && params_.m == other.params_.m &&
         params_.q == other.params_.q && params_.seed == other.params_.seed &&
         kind_ == other.kind_ && submatrices_ == other.submatrices_;
}

std::vector<std::vector<uint32_t>> k_subsets(uint32_t n, uint32_t k) {
  std::vector<std::vector<uint32_t>> out;
  std::vector<uint32_t> cur(k);
  for (uint32_t i = 0; i < k; ++i) cur[i] = i + 1;
  while (true) {
    out.push_back(cur);
    // advance the rightmost index that still has room
    size_t j = k;
    while (j-- > 0) {
      if (cur[j] < n - (k - 1 - j)) {
        ++cur[j];
        for (size_t t = j + 1; t < k; ++t) cur[t] = cur[t - 1] + 1;
        break;
      }
      if (j == 0) return out;
    }
  }
}

Matrix composite_matrix(const CodeInstance& code,
                        const std::vector<uint32_t>& subset) {
  const auto& dp = code.derived();
  const uint32_t k = code.params().k;
  const size_t alpha = dp.alpha_sub;
  Matrix m(code.field(), subset.size() * alpha, k * alpha);
  for (size_t s = 0; s < subset.size(); ++s) {
    for (uint32_t l = 1; l <= k; ++l) {
      for (size_t t = 0; t < alpha; ++t) {
        const uint64_t v = code.encoding_entry(subset[s], l, t);
        if (v != 0) m.set(s * alpha + t, (l - 1) * alpha + t, v);
      }
    }
  }
  return m;
}

std::vector<Matrix> subset_decode_matrices(const CodeInstance& code,
                                           const std::vector<uint32_t>& subset) {
  const uint32_t k = code.params().k;
  if (subset.size() != k) fail(Errc::bad_argument, "subset size must be k");
  const size_t alpha = code.derived().alpha_sub;
  std::vector<Matrix> out;
  out.reserve(alpha);
  for (size_t t = 0; t < alpha; ++t) {
    Matrix mt(code.field(), k, k);
    for (uint32_t j = 0; j < k; ++j)
      for (uint32_t l = 1; l <= k; ++l)
        mt.set(j, l - 1, code.encoding_entry(subset[j], l, t));
    out.push_back(mt.inverse());  // Errc::singular propagates
  }
  return out;
}

MdsReport verify_mds(const CodeInstance& code) {
  MdsReport report;
  const auto& p = code.params();
  const size_t full = static_cast<size_t>(p.k) * code.derived().alpha_sub;
  for (const auto& subset : k_subsets(p.n, p.k)) {
    MdsReport::Entry e;
    e.subset = subset;
    e.ok = composite_matrix(code, subset).rank() == full;
    report.entries.push_back(std::move(e));
  }
  return report;
}

CodeInstance construct_code(const CodeParams& params) {
  validate_params(params);
  const DerivedParams dp = derive_params(params);
  const Field field(params.q);
  constexpr uint32_t kMaxAttempts = 32;
  std::string last_failure = "no attempt made";
  for (uint32_t attempt = 0; attempt < kMaxAttempts; ++attempt) {
    CounterRng rng(params.seed, attempt);
    std::vector<DiagonalMatrix> mats;
    mats.reserve(static_cast<size_t>(params.n - params.k) * params.k);
    for (uint32_t i = 1; i <= params.n - params.k; ++i) {
      for (uint32_t l = 1; l <= params.k; ++l) {
        std::vector<uint64_t> diag(dp.alpha_sub);
        for (auto& v : diag) v = rng.nonzero(params.q);
        mats.emplace_back(field, std::move(diag));
      }
    }
    CodeInstance inst(params, std::move(mats), CodeInstance::Kind::random_draw,
                      attempt);
    auto mds = std::make_shared<MdsReport>(verify_mds(inst));
    auto ranks = std::make_shared<RankReport>(verify_repair_ranks(inst));
    if (mds->all_ok() && ranks->all_ok()) {
      inst.attach_reports(std::move(mds), std::move(ranks));
      return inst;
    }
    if (!mds->all_ok()) {
      for (const auto& e : mds->entries) {
        if (!e.ok) {
          std::string ids;
          for (uint32_t id : e.subset)
            ids += (ids.empty() ? "" : ",") + std::to_string(id);
          last_failure = "MDS composite rank failed for subset {" + ids + "}";
          break;
        }
      }
    } else {
      for (const auto& e : ranks->entries) {
        if (!e.ok()) {
          last_failure = "repair rank condition failed for node " +
                         std::to_string(e.node);
          break;
        }
      }
    }
  }
  fail(Errc::construction_failed,
       "construction failed after 32 attempts; last: " + last_failure);
}

}  // namespace msr
