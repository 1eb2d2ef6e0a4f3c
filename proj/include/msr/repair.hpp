#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "msr/code.hpp"
#include "msr/projection.hpp"
#include "msr/rational.hpp"

namespace msr {

// Per-node repair rank conditions with the canonical helper set: the stacked
// desired matrix must reach full rank alpha_sub, and every generator times a
// V column must land exactly on a Vbar column.
struct RankReport {
  struct Entry {
    uint32_t node = 0;
    bool systematic = false;
    size_t desired_rank = 0;
    size_t required_rank = 0;
    bool containment_ok = false;
    bool ok() const {
      return desired_rank == required_rank && containment_ok;
    }
  };
  std::vector<Entry> entries;
  size_t passed() const;
  bool all_ok() const;
};

// Contents keyed by node id; repairs read only the helper entries.
using BlockMap = std::map<uint32_t, std::vector<uint64_t>>;

struct RepairResult {
  uint32_t failed = 0;
  std::vector<uint32_t> helpers;  // ascending
  std::vector<uint64_t> restored;
  std::vector<std::pair<uint32_t, uint64_t>> downloads;  // helper -> subsymbols
  uint64_t total_downloaded = 0;
  Rational gamma_measured;  // total / m^N, in capacity units
};

// Change of information-unit basis that makes the k nodes of `basis` look
// systematic: their contents become the primed units, and every other node's
// block re-encodes through diagonal primed submatrices.
struct RebasedView {
  std::vector<uint32_t> basis;  // sorted ascending
  Matrix transform;             // composite matrix of the basis
  Matrix transform_inverse;
  // (non-basis node, basis slot 1..k) -> primed diagonal submatrix
  std::map<std::pair<uint32_t, uint32_t>, DiagonalMatrix> primed;
  std::vector<std::vector<uint64_t>> basis_units;  // basis node contents
};

// (k-1)((m+1)/m)^N + (d-k+1), exact; decreasing in m toward d for k >= 2.
Rational gamma_formula(uint32_t k, uint32_t d, uint32_t m);

RankReport verify_repair_ranks(const CodeInstance& code);

RebasedView rebase(const CodeInstance& code, const std::vector<uint32_t>& basis,
                   const BlockMap& blocks);

// Canonical-shape repair: failed node is systematic, helpers are the other
// k-1 systematic nodes plus d-k+1 parity nodes.
RepairResult repair_systematic(const CodeInstance& code, uint32_t failed,
                               const std::vector<uint32_t>& helpers,
                               const BlockMap& blocks);

// Repair of any node from any d survivors. Internally picks a basis
// {failed} + first k-1 helpers (systematic ids first, ascending), rebases,
// and runs the aligned repair in primed coordinates; the restored primed unit
// is the failed node's content.
RepairResult repair_node(const CodeInstance& code, uint32_t failed,
                         const std::vector<uint32_t>& helpers,
                         const BlockMap& blocks);

// Prepared repair for one (failed, helpers) pair: projection sets,
// cancellation tables and the inverted decode system, reusable across any
// number of codewords.
class RepairPlan {
 public:
  RepairPlan(const CodeInstance& code, uint32_t failed,
             std::vector<uint32_t> helpers);

  RepairResult apply(const BlockMap& blocks) const;

  uint32_t failed() const { return failed_; }
  const std::vector<uint32_t>& helpers() const { return helpers_; }
  uint64_t subsymbols_from(uint32_t helper) const;
  uint64_t subsymbols_total() const;

 private:
  const CodeInstance* code_ = nullptr;
  uint32_t failed_ = 0;
  std::vector<uint32_t> helpers_;        // ascending
  std::vector<uint32_t> parity_like_;    // non-basis helpers, ascending
  std::vector<uint32_t> sys_like_;       // basis helpers, ascending
  std::vector<size_t> sys_slot_;         // basis slot per sys-like helper
  size_t failed_slot_ = 0;
  std::vector<DiagonalMatrix> desired_;  // primed D(g, failed slot) per g
  ProjectionSet proj_;
  // cancel_[g][s][c]: Vbar column holding sys-like helper s's share of parity
  // helper g's download column c
  std::vector<std::vector<std::vector<uint64_t>>> cancel_;
  Matrix solver_;  // inverse of the stacked desired system
};

}  // namespace msr
