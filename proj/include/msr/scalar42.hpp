#pragma once

#include <array>
#include <cstdint>
#include <memory>

#include "msr/code.hpp"
#include "msr/repair.hpp"

namespace msr {

// The fixed (4,2,3) code over GF(5): node 3 stores (a1+b1, 2*a2+b2), node 4
// stores (2*a1+b1, a2+b2). Every node repairs exactly from the other three
// with one transmitted symbol per survivor (gamma = 3 = cutset).
struct Scalar42Code {
  Field gf5;
  DiagonalMatrix A1, B1, A2, B2;
  std::array<uint64_t, 2> projection;  // v = (1,1)
  std::shared_ptr<const CodeInstance> embedding;
};

Scalar42Code build_42();

struct Scalar42Repair {
  uint32_t failed = 0;
  std::array<uint64_t, 2> restored{};
  // survivor id -> the single symbol it transmits, ascending id order
  std::vector<std::pair<uint32_t, uint64_t>> downloads;
};

// Survivor projections with interference aligned on v; parity failures reuse
// the same procedure after remapping parity contents to primed units.
Scalar42Repair repair_42(const Scalar42Code& code, uint32_t failed,
                         const BlockMap& survivor_blocks);

// The two stated rank conditions plus their parity-side analogues.
struct Scalar42RankCheck {
  bool node1 = false, node2 = false, node3 = false, node4 = false;
  bool all_ok() const { return node1 && node2 && node3 && node4; }
};

Scalar42RankCheck scalar42_rank_conditions(const Scalar42Code& code);

}  // namespace msr
