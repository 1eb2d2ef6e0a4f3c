#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "msr/code.hpp"
#include "msr/rational.hpp"
#include "msr/repair.hpp"

namespace msr {

enum class EventKind { ingest, fail, repair, dc_read };

// One simulator event; renders to a single self-contained line and parses
// back for replay.
struct TraceRecord {
  uint64_t epoch = 0;
  EventKind kind = EventKind::ingest;
  std::vector<uint32_t> nodes;
  std::vector<uint32_t> helpers;                          // repair only
  std::vector<std::pair<uint32_t, uint64_t>> transfers;   // per-edge subsymbols
  uint64_t stripes = 0;
  std::optional<uint64_t> payload_bytes;                  // ingest, byte mode
  std::optional<uint64_t> payload_units;                  // ingest, unit mode
  std::optional<Rational> gamma;                          // repair, units/stripe

  std::string to_line() const;
  static TraceRecord from_line(const std::string& line);
};

struct MetricsSummary {
  uint64_t ingests = 0, fails = 0, repairs = 0, dc_reads = 0;
  uint64_t subsymbols_placed = 0;
  uint64_t subsymbols_repair = 0;
  uint64_t subsymbols_read = 0;
  std::vector<Rational> repair_gammas;  // units per stripe
  Rational cutset_gamma;                // d units at the maximum file size
  std::string to_text() const;
};

// Simulated n-node cluster holding one encoded file. Files longer than one
// codeword are striped: node data is the concatenation of that node's
// alpha_sub-subsymbol block per stripe. Single-failure model.
class Cluster {
 public:
  // Byte files need q > 2^16 so every little-endian 16-bit pack is a valid
  // residue (Errc::field_too_small otherwise). The payload is framed with an
  // 8-byte length plus a padding scheme byte, then zero-padded.
  static Cluster ingest(std::shared_ptr<const CodeInstance> code,
                        std::span<const uint8_t> bytes);

  // Raw in-field payload, one stripe: k units of alpha_sub subsymbols.
  static Cluster ingest_units(std::shared_ptr<const CodeInstance> code,
                              const std::vector<std::vector<uint64_t>>& units);

  const CodeInstance& code() const { return *code_; }
  std::shared_ptr<const CodeInstance> code_ptr() const { return code_; }
  uint64_t epoch() const { return epoch_; }
  uint64_t stripes() const { return stripes_; }
  bool byte_mode() const { return byte_mode_; }
  bool node_live(uint32_t id) const;
  const std::vector<uint64_t>& node_data(uint32_t id) const;
  std::optional<uint32_t> failed_node() const;

  void fail(uint32_t node);

  struct RepairOutcome {
    uint32_t failed = 0;
    std::vector<uint32_t> helpers;
    uint64_t subsymbols = 0;
    uint64_t stripes = 0;
    Rational gamma;  // units per stripe
  };
  // Helpers default to the d lowest-id live nodes when empty.
  RepairOutcome run_repair(const std::vector<uint32_t>& helpers = {});
  std::optional<RepairOutcome> last_repair() const { return last_repair_; }

  std::vector<uint8_t> dc_read(const std::vector<uint32_t>& subset);
  // Unit streams (per information unit, stripes concatenated).
  std::vector<std::vector<uint64_t>> dc_read_units(
      const std::vector<uint32_t>& subset);

  const std::vector<TraceRecord>& trace() const { return trace_; }
  std::string trace_text() const;
  MetricsSummary metrics() const;

 private:
  Cluster() = default;
  void place(const std::vector<uint64_t>& payload_subsymbols);
  std::vector<Matrix> decode_tables(const std::vector<uint32_t>& subset) const;

  std::shared_ptr<const CodeInstance> code_;
  struct Node {
    bool live = true;
    std::vector<uint64_t> data;
  };
  std::vector<Node> nodes_;  // index id-1
  uint64_t epoch_ = 0;
  uint64_t stripes_ = 0;
  bool byte_mode_ = true;
  uint64_t ingested_bytes_ = 0;
  std::vector<TraceRecord> trace_;
  std::optional<RepairOutcome> last_repair_;
};

// Re-executes a recorded trace against the same code and payload; the result
// must match the original cluster state event for event.
Cluster replay_trace(std::shared_ptr<const CodeInstance> code,
                     std::span<const uint8_t> payload_bytes,
                     const std::string& trace_text);
Cluster replay_trace_units(std::shared_ptr<const CodeInstance> code,
                           const std::vector<std::vector<uint64_t>>& units,
                           const std::string& trace_text);

}  // namespace msr
