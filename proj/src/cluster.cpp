#include "msr/cluster.hpp"

#include <algorithm>
#include <sstream>

#include "msr/scalar42.hpp"

namespace msr {

namespace {

constexpr uint8_t kPaddingSchemeZero = 0;
constexpr size_t kHeaderBytes = 9;  // u64 little-endian length + scheme byte

std::string join_ids(const std::vector<uint32_t>& ids) {
  std::string out;
  for (uint32_t id : ids) {
    if (!out.empty()) out += ",";
    out += std::to_string(id);
  }
  return out;
}

std::string join_transfers(
    const std::vector<std::pair<uint32_t, uint64_t>>& transfers) {
  std::string out;
  for (const auto& [id, n] : transfers) {
    if (!out.empty()) out += ",";
    out += std::to_string(id) + ":" + std::to_string(n);
  }
  return out;
}

std::vector<uint32_t> parse_ids(const std::string& text) {
  std::vector<uint32_t> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      out.push_back(static_cast<uint32_t>(std::stoul(tok)));
    } catch (...) {
      fail(Errc::parse_error, "bad id list in trace record");
    }
  }
  return out;
}

std::vector<std::pair<uint32_t, uint64_t>> parse_transfers(
    const std::string& text) {
  std::vector<std::pair<uint32_t, uint64_t>> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    const auto colon = tok.find(':');
    if (colon == std::string::npos)
      fail(Errc::parse_error, "bad transfer entry in trace record");
    try {
      out.emplace_back(static_cast<uint32_t>(std::stoul(tok.substr(0, colon))),
                       std::stoull(tok.substr(colon + 1)));
    } catch (...) {
      fail(Errc::parse_error, "bad transfer entry in trace record");
    }
  }
  return out;
}

const char* event_name(EventKind k) {
  switch (k) {
    case EventKind::ingest: return "ingest";
    case EventKind::fail: return "fail";
    case EventKind::repair: return "repair";
    case EventKind::dc_read: return "dc_read";
  }
  return "?";
}

EventKind event_from(const std::string& name) {
  if (name == "ingest") return EventKind::ingest;
  if (name == "fail") return EventKind::fail;
  if (name == "repair") return EventKind::repair;
  if (name == "dc_read") return EventKind::dc_read;
  fail(Errc::parse_error, "unknown trace event kind: " + name);
}

}  // namespace

std::string TraceRecord::to_line() const {
  std::string out = "epoch=" + std::to_string(epoch);
  out += " event=" + std::string(event_name(kind));
  out += " nodes=" + join_ids(nodes);
  if (kind == EventKind::repair) out += " helpers=" + join_ids(helpers);
  if (kind != EventKind::fail) {
    out += " stripes=" + std::to_string(stripes);
    out += " transfers=" + join_transfers(transfers);
  }
  if (payload_bytes) out += " bytes=" + std::to_string(*payload_bytes);
  if (payload_units) out += " units=" + std::to_string(*payload_units);
  if (gamma) out += " gamma=" + rational_str(*gamma);
  return out;
}

TraceRecord TraceRecord::from_line(const std::string& line) {
  TraceRecord rec;
  std::stringstream ss(line);
  std::string tok;
  bool saw_epoch = false, saw_event = false;
  while (ss >> tok) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos)
      fail(Errc::parse_error, "trace token without '='");
    const std::string key = tok.substr(0, eq);
    const std::string val = tok.substr(eq + 1);
    try {
      if (key == "epoch") {
        rec.epoch = std::stoull(val);
        saw_epoch = true;
      } else if (key == "event") {
        rec.kind = event_from(val);
        saw_event = true;
      } else if (key == "nodes") {
        rec.nodes = parse_ids(val);
      } else if (key == "helpers") {
        rec.helpers = parse_ids(val);
      } else if (key == "stripes") {
        rec.stripes = std::stoull(val);
      } else if (key == "transfers") {
        rec.transfers = parse_transfers(val);
      } else if (key == "bytes") {
        rec.payload_bytes = std::stoull(val);
      } else if (key == "units") {
        rec.payload_units = std::stoull(val);
      } else if (key == "gamma") {
        rec.gamma = parse_rational(val);
      } else {
        fail(Errc::parse_error, "unknown trace field: " + key);
      }
    } catch (const Error&) {
      throw;
    } catch (...) {
      fail(Errc::parse_error, "bad trace value for field " + key);
    }
  }
  if (!saw_epoch || !saw_event)
    fail(Errc::parse_error, "trace record needs epoch and event");
  return rec;
}

std::string MetricsSummary::to_text() const {
  std::string out;
  out += "events: ingest=" + std::to_string(ingests) +
         " fail=" + std::to_string(fails) +
         " repair=" + std::to_string(repairs) +
         " dc_read=" + std::to_string(dc_reads) + "\n";
  out += "subsymbols: placed=" + std::to_string(subsymbols_placed) +
         " repair=" + std::to_string(subsymbols_repair) +
         " read=" + std::to_string(subsymbols_read) + "\n";
  out += "cutset gamma: " + rational_str(cutset_gamma) + " units\n";
  for (size_t i = 0; i < repair_gammas.size(); ++i) {
    out += "repair " + std::to_string(i + 1) +
           ": gamma=" + rational_str(repair_gammas[i]) + " units (" +
           rational_decimal(repair_gammas[i], 4) + ", cutset " +
           rational_str(cutset_gamma) + ")\n";
  }
  return out;
}

bool Cluster::node_live(uint32_t id) const {
  if (id < 1 || id > nodes_.size())
    fail(Errc::unknown_node, "node id out of range");
  return nodes_[id - 1].live;
}

const std::vector<uint64_t>& Cluster::node_data(uint32_t id) const {
  if (id < 1 || id > nodes_.size())
    fail(Errc::unknown_node, "node id out of range");
  if (!nodes_[id - 1].live)
    fail(Errc::bad_argument, "node is failed; no data");
  return nodes_[id - 1].data;
}

std::optional<uint32_t> Cluster::failed_node() const {
  for (uint32_t id = 1; id <= nodes_.size(); ++id)
    if (!nodes_[id - 1].live) return id;
  return std::nullopt;
}

void Cluster::place(const std::vector<uint64_t>& payload) {
  const auto& dp = code_->derived();
  const auto& p = code_->params();
  stripes_ = payload.size() / dp.M_sub;
  nodes_.assign(p.n, Node{});
  for (auto& n : nodes_) n.data.assign(stripes_ * dp.alpha_sub, 0);
  for (uint64_t s = 0; s < stripes_; ++s) {
    std::vector<std::vector<uint64_t>> units(p.k);
    for (uint32_t l = 0; l < p.k; ++l) {
      const size_t off = s * dp.M_sub + l * dp.alpha_sub;
      units[l].assign(payload.begin() + off,
                      payload.begin() + off + dp.alpha_sub);
    }
    const auto blocks = code_->encode(units);
    for (uint32_t id = 1; id <= p.n; ++id) {
      std::copy(blocks[id - 1].begin(), blocks[id - 1].end(),
                nodes_[id - 1].data.begin() + s * dp.alpha_sub);
    }
  }
}

Cluster Cluster::ingest(std::shared_ptr<const CodeInstance> code,
                        std::span<const uint8_t> bytes) {
  if (code->params().q <= 65536)
    fail(Errc::field_too_small,
         "byte packing needs q > 2^16 (try the default q = 65537)");
  Cluster c;
  c.code_ = std::move(code);
  c.byte_mode_ = true;
  c.ingested_bytes_ = bytes.size();

  std::vector<uint8_t> framed;
  framed.reserve(kHeaderBytes + bytes.size());
  const uint64_t len = bytes.size();
  for (int i = 0; i < 8; ++i)
    framed.push_back(static_cast<uint8_t>(len >> (8 * i)));
  framed.push_back(kPaddingSchemeZero);
  framed.insert(framed.end(), bytes.begin(), bytes.end());

  const auto& dp = c.code_->derived();
  const uint64_t subsyms = (framed.size() + 1) / 2;
  const uint64_t stripes = (subsyms + dp.M_sub - 1) / dp.M_sub;
  std::vector<uint64_t> payload(stripes * dp.M_sub, 0);
  for (size_t i = 0; i < framed.size(); ++i)
    payload[i / 2] |= static_cast<uint64_t>(framed[i]) << (8 * (i % 2));

  c.place(payload);

  TraceRecord rec;
  rec.epoch = ++c.epoch_;
  rec.kind = EventKind::ingest;
  for (uint32_t id = 1; id <= c.code_->params().n; ++id) {
    rec.nodes.push_back(id);
    rec.transfers.emplace_back(id, c.stripes_ * dp.alpha_sub);
  }
  rec.stripes = c.stripes_;
  rec.payload_bytes = len;
  c.trace_.push_back(std::move(rec));
  return c;
}

Cluster Cluster::ingest_units(std::shared_ptr<const CodeInstance> code,
                              const std::vector<std::vector<uint64_t>>& units) {
  Cluster c;
  c.code_ = std::move(code);
  c.byte_mode_ = false;
  const auto& p = c.code_->params();
  const auto& dp = c.code_->derived();
  if (units.size() != p.k)
    fail(Errc::length_mismatch, "need k information units");
  std::vector<uint64_t> payload;
  payload.reserve(dp.M_sub);
  for (const auto& u : units) {
    if (u.size() != dp.alpha_sub)
      fail(Errc::length_mismatch, "unit length must be alpha_sub");
    for (uint64_t v : u) {
      if (v >= p.q) fail(Errc::bad_argument, "unit value not reduced mod q");
      payload.push_back(v);
    }
  }
  c.place(payload);

  TraceRecord rec;
  rec.epoch = ++c.epoch_;
  rec.kind = EventKind::ingest;
  for (uint32_t id = 1; id <= p.n; ++id) {
    rec.nodes.push_back(id);
    rec.transfers.emplace_back(id, dp.alpha_sub);
  }
  rec.stripes = 1;
  rec.payload_units = dp.M_sub;
  c.trace_.push_back(std::move(rec));
  return c;
}

void Cluster::fail(uint32_t node) {
  if (node < 1 || node > nodes_.size())
    msr::fail(Errc::unknown_node,
              "node id " + std::to_string(node) + " out of range");
  if (!nodes_[node - 1].live)
    msr::fail(Errc::already_failed, "node already failed");
  if (failed_node())
    msr::fail(Errc::double_failure,
              "another node is already failed (single-failure model)");
  nodes_[node - 1].live = false;
  nodes_[node - 1].data.clear();
  TraceRecord rec;
  rec.epoch = ++epoch_;
  rec.kind = EventKind::fail;
  rec.nodes.push_back(node);
  trace_.push_back(std::move(rec));
}

Cluster::RepairOutcome Cluster::run_repair(
    const std::vector<uint32_t>& helpers_in) {
  const auto failed = failed_node();
  if (!failed) msr::fail(Errc::no_failure, "no failed node to repair");
  const auto& p = code_->params();
  const auto& dp = code_->derived();

  std::vector<uint32_t> helpers = helpers_in;
  if (helpers.empty()) {
    for (uint32_t id = 1; id <= p.n && helpers.size() < p.d; ++id)
      if (nodes_[id - 1].live) helpers.push_back(id);
  }
  for (uint32_t h : helpers)
    if (h < 1 || h > p.n || !nodes_[h - 1].live)
      msr::fail(Errc::wrong_helper_shape, "helper must be a live node");

  RepairOutcome out;
  out.failed = *failed;
  out.stripes = stripes_;
  std::vector<uint64_t> restored(stripes_ * dp.alpha_sub, 0);
  std::vector<std::pair<uint32_t, uint64_t>> transfers;

  if (code_->scalar_baseline()) {
    if (helpers.size() != p.d)
      msr::fail(Errc::wrong_helper_shape, "need exactly d helpers");
    const Scalar42Code sc = build_42();
    for (uint64_t s = 0; s < stripes_; ++s) {
      BlockMap blocks;
      for (uint32_t h : helpers) {
        const auto& data = nodes_[h - 1].data;
        blocks[h] = {data[s * 2], data[s * 2 + 1]};
      }
      const auto rep = repair_42(sc, *failed, blocks);
      restored[s * 2] = rep.restored[0];
      restored[s * 2 + 1] = rep.restored[1];
    }
    std::sort(helpers.begin(), helpers.end());
    for (uint32_t h : helpers) transfers.emplace_back(h, stripes_);
    out.helpers = helpers;
    out.subsymbols = stripes_ * helpers.size();
    out.gamma = Rational(helpers.size());  // one unit-capacity symbol each
  } else {
    RepairPlan plan(*code_, *failed, helpers);
    for (uint64_t s = 0; s < stripes_; ++s) {
      BlockMap blocks;
      for (uint32_t h : plan.helpers()) {
        const auto& data = nodes_[h - 1].data;
        blocks[h] = std::vector<uint64_t>(
            data.begin() + s * dp.alpha_sub,
            data.begin() + (s + 1) * dp.alpha_sub);
      }
      const auto rep = plan.apply(blocks);
      std::copy(rep.restored.begin(), rep.restored.end(),
                restored.begin() + s * dp.alpha_sub);
    }
    for (uint32_t h : plan.helpers())
      transfers.emplace_back(h, plan.subsymbols_from(h) * stripes_);
    out.helpers = plan.helpers();
    out.subsymbols = plan.subsymbols_total() * stripes_;
    out.gamma = Rational(plan.subsymbols_total(), dp.B);
  }

  nodes_[*failed - 1].live = true;
  nodes_[*failed - 1].data = std::move(restored);

  TraceRecord rec;
  rec.epoch = ++epoch_;
  rec.kind = EventKind::repair;
  rec.nodes.push_back(*failed);
  rec.helpers = out.helpers;
  rec.transfers = transfers;
  rec.stripes = stripes_;
  rec.gamma = out.gamma;
  trace_.push_back(std::move(rec));
  last_repair_ = out;
  return out;
}

std::vector<Matrix> Cluster::decode_tables(
    const std::vector<uint32_t>& subset) const {
  const auto& p = code_->params();
  if (subset.size() != p.k)
    msr::fail(Errc::bad_subset, "data collector must contact exactly k nodes");
  std::vector<uint32_t> sorted = subset;
  std::sort(sorted.begin(), sorted.end());
  for (size_t i = 0; i < sorted.size(); ++i) {
    if (sorted[i] < 1 || sorted[i] > p.n)
      msr::fail(Errc::bad_subset, "subset node id out of range");
    if (i > 0 && sorted[i] == sorted[i - 1])
      msr::fail(Errc::bad_subset, "duplicate node in subset");
    if (!nodes_[sorted[i] - 1].live)
      msr::fail(Errc::bad_subset, "subset contains a failed node");
  }
  return subset_decode_matrices(*code_, subset);
}

std::vector<std::vector<uint64_t>> Cluster::dc_read_units(
    const std::vector<uint32_t>& subset) {
  const auto& p = code_->params();
  const auto& dp = code_->derived();
  const auto inv = decode_tables(subset);
  std::vector<std::vector<uint64_t>> units(
      p.k, std::vector<uint64_t>(stripes_ * dp.alpha_sub, 0));
  const Field& f = code_->field();
  for (uint64_t s = 0; s < stripes_; ++s) {
    for (size_t t = 0; t < dp.alpha_sub; ++t) {
      for (uint32_t l = 0; l < p.k; ++l) {
        uint64_t acc = 0;
        for (uint32_t j = 0; j < p.k; ++j) {
          const auto& data = nodes_[subset[j] - 1].data;
          acc = f.add(acc, f.mul(inv[t].at(l, j), data[s * dp.alpha_sub + t]));
        }
        units[l][s * dp.alpha_sub + t] = acc;
      }
    }
  }
  TraceRecord rec;
  rec.epoch = ++epoch_;
  rec.kind = EventKind::dc_read;
  rec.nodes = subset;
  rec.stripes = stripes_;
  for (uint32_t id : subset)
    rec.transfers.emplace_back(id, stripes_ * dp.alpha_sub);
  trace_.push_back(std::move(rec));
  return units;
}

std::vector<uint8_t> Cluster::dc_read(const std::vector<uint32_t>& subset) {
  if (!byte_mode_)
    msr::fail(Errc::bad_argument,
              "cluster holds a raw unit payload; use dc_read_units");
  const auto units = dc_read_units(subset);
  const auto& dp = code_->derived();
  // reassemble the packed payload in stripe-major, unit-major order
  std::vector<uint8_t> raw;
  raw.reserve(stripes_ * dp.M_sub * 2);
  for (uint64_t s = 0; s < stripes_; ++s) {
    for (const auto& u : units) {
      for (size_t t = 0; t < dp.alpha_sub; ++t) {
        const uint64_t v = u[s * dp.alpha_sub + t];
        if (v > 0xffff)
          msr::fail(Errc::internal, "decoded subsymbol exceeds 16 bits");
        raw.push_back(static_cast<uint8_t>(v & 0xff));
        raw.push_back(static_cast<uint8_t>(v >> 8));
      }
    }
  }
  if (raw.size() < kHeaderBytes)
    msr::fail(Errc::internal, "payload shorter than its header");
  uint64_t len = 0;
  for (int i = 0; i < 8; ++i) len |= static_cast<uint64_t>(raw[i]) << (8 * i);
  if (raw[8] != kPaddingSchemeZero)
    msr::fail(Errc::parse_error, "unknown padding scheme id");
  if (len > raw.size() - kHeaderBytes)
    msr::fail(Errc::internal, "length header exceeds stored payload");
  return std::vector<uint8_t>(raw.begin() + kHeaderBytes,
                              raw.begin() + kHeaderBytes + len);
}

std::string Cluster::trace_text() const {
  std::string out;
  for (const auto& rec : trace_) {
    out += rec.to_line();
    out += "\n";
  }
  return out;
}

MetricsSummary Cluster::metrics() const {
  MetricsSummary ms;
  const auto& p = code_->params();
  ms.cutset_gamma =
      cutset_point(p.n, p.k, p.d, Rational(code_->derived().M_units)).gamma;
  for (const auto& rec : trace_) {
    uint64_t total = 0;
    for (const auto& [id, n] : rec.transfers) total += n;
    switch (rec.kind) {
      case EventKind::ingest:
        ++ms.ingests;
        ms.subsymbols_placed += total;
        break;
      case EventKind::fail:
        ++ms.fails;
        break;
      case EventKind::repair:
        ++ms.repairs;
        ms.subsymbols_repair += total;
        if (rec.gamma) ms.repair_gammas.push_back(*rec.gamma);
        break;
      case EventKind::dc_read:
        ++ms.dc_reads;
        ms.subsymbols_read += total;
        break;
    }
  }
  return ms;
}

namespace {

Cluster replay_impl(Cluster cluster, const std::string& trace_text) {
  std::stringstream ss(trace_text);
  std::string line;
  bool first = true;
  while (std::getline(ss, line)) {
    if (line.empty()) continue;
    const TraceRecord rec = TraceRecord::from_line(line);
    if (first) {
      if (rec.kind != EventKind::ingest)
        fail(Errc::parse_error, "trace must start with an ingest record");
      first = false;
      continue;  // ingest already applied by the caller
    }
    switch (rec.kind) {
      case EventKind::ingest:
        fail(Errc::parse_error, "trace has a second ingest record");
      case EventKind::fail:
        if (rec.nodes.size() != 1)
          fail(Errc::parse_error, "fail record needs one node");
        cluster.fail(rec.nodes[0]);
        break;
      case EventKind::repair:
        cluster.run_repair(rec.helpers);
        break;
      case EventKind::dc_read:
        if (cluster.byte_mode())
          cluster.dc_read(rec.nodes);
        else
          cluster.dc_read_units(rec.nodes);
        break;
    }
  }
  return cluster;
}

}  // namespace

Cluster replay_trace(std::shared_ptr<const CodeInstance> code,
                     std::span<const uint8_t> payload_bytes,
                     const std::string& trace_text) {
  return replay_impl(Cluster::ingest(std::move(code), payload_bytes),
                     trace_text);
}

Cluster replay_trace_units(std::shared_ptr<const CodeInstance> code,
                           const std::vector<std::vector<uint64_t>>& units,
                           const std::string& trace_text) {
  return replay_impl(Cluster::ingest_units(std::move(code), units), trace_text);
}

}  // namespace msr
