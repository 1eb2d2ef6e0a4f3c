#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "msr/matrix.hpp"
#include "msr/params.hpp"

namespace msr {

struct RankReport;  // repair.hpp

// Pass/fail of the composite-rank check for every k-subset of nodes,
// lexicographic subset order.
struct MdsReport {
  struct Entry {
    std::vector<uint32_t> subset;
    bool ok = false;
  };
  std::vector<Entry> entries;
  size_t passed() const;
  bool all_ok() const;
};

// A concrete code: parameters plus the (n-k)*k diagonal encoding submatrices
// G(i,l), each alpha_sub square. Node l in 1..k stores unit l verbatim; parity
// node k+i stores sum_l G(i,l) * w_l. Immutable once built.
class CodeInstance {
 public:
  enum class Kind { random_draw, explicit_matrices, scalar_baseline };

  CodeInstance(const CodeParams& params, std::vector<DiagonalMatrix> submatrices,
               Kind kind, uint32_t attempt);

  const CodeParams& params() const { return params_; }
  const DerivedParams& derived() const { return derived_; }
  const Field& field() const { return field_; }
  Kind kind() const { return kind_; }
  bool scalar_baseline() const { return kind_ == Kind::scalar_baseline; }
  uint32_t attempt() const { return attempt_; }

  // 1-based: parity_index in 1..n-k, unit_index in 1..k.
  const DiagonalMatrix& submatrix(uint32_t parity_index,
                                  uint32_t unit_index) const;

  // Diagonal entry of the encoding block E(node, unit) at a subsymbol
  // position; identity/zero blocks for systematic nodes.
  uint64_t encoding_entry(uint32_t node, uint32_t unit, size_t position) const;

  // k units of length alpha_sub in, n stored blocks out.
  std::vector<std::vector<uint64_t>> encode(
      const std::vector<std::vector<uint64_t>>& units) const;

  void attach_reports(std::shared_ptr<const MdsReport> mds,
                      std::shared_ptr<const RankReport> ranks);
  const MdsReport* mds_report() const { return mds_.get(); }
  const RankReport* rank_report() const { return ranks_.get(); }
  bool verified() const;

  bool same_code(const CodeInstance& other) const;

 private:
  CodeParams params_;
  DerivedParams derived_;
  Field field_;
  std::vector<DiagonalMatrix> submatrices_;  // index (i-1)*k + (l-1)
  Kind kind_;
  uint32_t attempt_ = 0;
  std::shared_ptr<const MdsReport> mds_;
  std::shared_ptr<const RankReport> ranks_;
};

// Draws the diagonals i.i.d. uniform from {1..q-1} with the generator keyed
// by (seed, attempt) and resamples until both the MDS check and the repair
// rank conditions pass, up to 32 attempts. Errc::construction_failed carries
// the last failing condition.
CodeInstance construct_code(const CodeParams& params);

MdsReport verify_mds(const CodeInstance& code);

// Lexicographic k-subsets of {1..n}.
std::vector<std::vector<uint32_t>> k_subsets(uint32_t n, uint32_t k);

// The (k*alpha_sub)-square block matrix stacking each subset node's encoding
// row; composite * [w_1; ...; w_k] gives the stacked subset contents.
Matrix composite_matrix(const CodeInstance& code,
                        const std::vector<uint32_t>& subset);

// Per-position k×k inverses for decoding a k-subset; entry [t](l,j) maps
// subset node j's subsymbol t to unit l's subsymbol t. Errc::singular when
// the subset does not decode.
std::vector<Matrix> subset_decode_matrices(const CodeInstance& code,
                                           const std::vector<uint32_t>& subset);

// Canonical descriptor text; load(describe(c)) reproduces c exactly.
std::string describe_code(const CodeInstance& code);
CodeInstance load_code(const std::string& text);

}  // namespace msr
