// Command-line front end; everything goes through the C API in msrcode.h.
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "msrcode.h"

namespace {

struct StringGuard {
  char* p = nullptr;
  ~StringGuard() { msr_free(p); }
};

struct CodeGuard {
  msr_code* p = nullptr;
  ~CodeGuard() { msr_code_free(p); }
};

struct ClusterGuard {
  msr_cluster* p = nullptr;
  ~ClusterGuard() { msr_cluster_free(p); }
};

int report_error(const char* what, int rc) {
  std::fprintf(stderr, "error: %s: %s (%s)\n", what, msr_last_error(),
               msr_status_name(rc));
  return 1;
}

bool read_file(const std::string& path, std::string& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream ss;
  ss << in.rdbuf();
  out = ss.str();
  return true;
}

bool write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) return false;
  out << content;
  return out.good();
}

// Deterministic synthetic payload for simulate runs without --file.
std::vector<uint8_t> synthetic_bytes(uint64_t seed, size_t len) {
  std::vector<uint8_t> out(len);
  uint64_t state = seed;
  for (size_t i = 0; i < len; ++i) {
    state += 0x9e3779b97f4a7c15ull;
    uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    out[i] = static_cast<uint8_t>(z ^ (z >> 31));
  }
  return out;
}

std::vector<uint64_t> synthetic_units(uint64_t seed, size_t len, uint64_t q) {
  std::vector<uint64_t> out(len);
  uint64_t state = seed ^ 0x5851f42d4c957f2dull;
  for (size_t i = 0; i < len; ++i) {
    state += 0x9e3779b97f4a7c15ull;
    uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    out[i] = (z ^ (z >> 31)) % q;
  }
  return out;
}

std::string decimal(const std::string& rational, unsigned digits) {
  StringGuard s;
  if (msr_rational_to_decimal(rational.c_str(), digits, &s.p) != MSR_OK)
    return "?";
  return s.p;
}

int verify_and_print(const msr_code* code) {
  msr_verify_summary vs{};
  if (int rc = msr_code_verify(code, &vs); rc != MSR_OK)
    return report_error("verify", rc);
  std::printf("verification: MDS %llu/%llu, repair-ranks %u/%u\n",
              static_cast<unsigned long long>(vs.mds_passed),
              static_cast<unsigned long long>(vs.mds_total), vs.repair_passed,
              vs.repair_total);
  return vs.all_ok ? 0 : 1;
}

int cmd_construct(uint32_t n, uint32_t k, uint32_t d, uint32_t m, uint64_t q,
                  uint64_t seed, const std::string& out_path,
                  bool scalar_baseline) {
  CodeGuard code;
  if (scalar_baseline) {
    if (int rc = msr_code_scalar42(&code.p); rc != MSR_OK)
      return report_error("construct", rc);
  } else {
    if (int rc = msr_code_construct(n, k, d, m, q, seed, &code.p); rc != MSR_OK)
      return report_error("construct", rc);
  }
  msr_code_info info{};
  msr_code_get_info(code.p, &info);
  std::printf("constructed (%u,%u,%u) m=%u q=%llu seed=%llu%s\n", info.n,
              info.k, info.d, info.m, static_cast<unsigned long long>(info.q),
              static_cast<unsigned long long>(info.seed),
              info.is_scalar_baseline ? " [scalar baseline]" : "");
  std::printf("subsymbols per node: %llu (unit split B=%llu, N=%u)\n",
              static_cast<unsigned long long>(info.subsymbols_per_node),
              static_cast<unsigned long long>(info.subsymbols_per_unit),
              info.exponent_count);
  std::printf("attempts used: %u\n", info.attempts_used);
  const int verify_rc = verify_and_print(code.p);
  if (!out_path.empty()) {
    StringGuard text;
    if (int rc = msr_code_describe(code.p, &text.p); rc != MSR_OK)
      return report_error("describe", rc);
    if (!write_file(out_path, text.p)) {
      std::fprintf(stderr, "error: cannot write %s\n", out_path.c_str());
      return 1;
    }
    std::printf("descriptor written: %s\n", out_path.c_str());
  }
  return verify_rc;
}

int cmd_verify(const std::string& desc_path) {
  std::string text;
  if (!read_file(desc_path, text)) {
    std::fprintf(stderr, "error: cannot read %s\n", desc_path.c_str());
    return 1;
  }
  CodeGuard code;
  if (int rc = msr_code_load(text.c_str(), &code.p); rc != MSR_OK)
    return report_error("load", rc);
  msr_code_info info{};
  msr_code_get_info(code.p, &info);
  std::printf("loaded (%u,%u,%u) m=%u q=%llu seed=%llu%s\n", info.n, info.k,
              info.d, info.m, static_cast<unsigned long long>(info.q),
              static_cast<unsigned long long>(info.seed),
              info.is_scalar_baseline ? " [scalar baseline]" : "");
  return verify_and_print(code.p);
}

int cmd_simulate(const std::string& desc_path, const std::string& file_path,
                 uint32_t fail_node, const std::vector<uint32_t>& helpers,
                 const std::string& trace_path, const std::string& format,
                 uint64_t payload_seed, uint64_t payload_len) {
  std::string text;
  if (!read_file(desc_path, text)) {
    std::fprintf(stderr, "error: cannot read %s\n", desc_path.c_str());
    return 1;
  }
  CodeGuard code;
  if (int rc = msr_code_load(text.c_str(), &code.p); rc != MSR_OK)
    return report_error("load", rc);
  msr_code_info info{};
  msr_code_get_info(code.p, &info);

  const bool byte_mode = info.q > 65536;
  std::vector<uint8_t> payload;
  std::vector<uint64_t> unit_payload;
  ClusterGuard cluster;
  if (byte_mode) {
    if (!file_path.empty()) {
      std::string data;
      if (!read_file(file_path, data)) {
        std::fprintf(stderr, "error: cannot read %s\n", file_path.c_str());
        return 1;
      }
      payload.assign(data.begin(), data.end());
    } else {
      payload = synthetic_bytes(payload_seed, payload_len);
    }
    if (int rc = msr_cluster_ingest(code.p, payload.data(), payload.size(),
                                    &cluster.p);
        rc != MSR_OK)
      return report_error("ingest", rc);
    std::printf("ingested %zu bytes\n", payload.size());
  } else {
    if (!file_path.empty()) {
      std::fprintf(stderr,
                   "error: this code's field is too small for byte payloads; "
                   "omit --file for a synthetic in-field payload\n");
      return 1;
    }
    unit_payload = synthetic_units(
        payload_seed, static_cast<size_t>(info.k) * info.subsymbols_per_node,
        info.q);
    if (int rc = msr_cluster_ingest_units(code.p, unit_payload.data(),
                                          unit_payload.size(), &cluster.p);
        rc != MSR_OK)
      return report_error("ingest", rc);
    std::printf("ingested %zu in-field subsymbols\n", unit_payload.size());
  }

  // snapshot for the exactness check
  uint64_t* before = nullptr;
  size_t before_len = 0;
  if (int rc = msr_cluster_node_block(cluster.p, fail_node, &before,
                                      &before_len);
      rc != MSR_OK)
    return report_error("snapshot", rc);
  std::unique_ptr<uint64_t, decltype(&msr_free)> before_guard(
      before, &msr_free);

  if (int rc = msr_cluster_fail(cluster.p, fail_node); rc != MSR_OK)
    return report_error("fail", rc);
  std::printf("failed node %u\n", fail_node);

  if (int rc = msr_cluster_repair(cluster.p,
                                  helpers.empty() ? nullptr : helpers.data(),
                                  helpers.size());
      rc != MSR_OK)
    return report_error("repair", rc);

  uint64_t* after = nullptr;
  size_t after_len = 0;
  if (int rc =
          msr_cluster_node_block(cluster.p, fail_node, &after, &after_len);
      rc != MSR_OK)
    return report_error("post-repair read", rc);
  std::unique_ptr<uint64_t, decltype(&msr_free)> after_guard(after, &msr_free);

  const bool exact =
      before_len == after_len &&
      std::equal(before, before + before_len, after);

  uint64_t dl_subsymbols = 0, dl_stripes = 0;
  StringGuard gamma;
  msr_cluster_last_repair(cluster.p, &dl_subsymbols, &dl_stripes, &gamma.p);
  StringGuard alpha, cut_gamma, beta;
  msr_cutset_point(info.n, info.k, info.d, info.file_units, &alpha.p,
                   &cut_gamma.p, &beta.p);

  std::printf("repaired node %u: downloads=%llu subsymbols over %llu stripes\n",
              fail_node, static_cast<unsigned long long>(dl_subsymbols),
              static_cast<unsigned long long>(dl_stripes));
  std::printf("gamma: %s units (%s) vs cutset %s units\n", gamma.p,
              decimal(gamma.p, 4).c_str(), cut_gamma.p);
  std::printf("restored: %s\n", exact ? "exact" : "MISMATCH");

  // read back through the first k nodes and compare with the source
  std::vector<uint32_t> subset(info.k);
  for (uint32_t i = 0; i < info.k; ++i) subset[i] = i + 1;
  bool readback_ok = false;
  if (byte_mode) {
    uint8_t* bytes = nullptr;
    size_t len = 0;
    if (int rc = msr_cluster_read(cluster.p, subset.data(), subset.size(),
                                  &bytes, &len);
        rc != MSR_OK)
      return report_error("dc_read", rc);
    readback_ok =
        len == payload.size() && std::equal(bytes, bytes + len, payload.begin());
    msr_free(bytes);
  } else {
    uint64_t* units = nullptr;
    size_t len = 0;
    if (int rc = msr_cluster_read_units(cluster.p, subset.data(),
                                        subset.size(), &units, &len);
        rc != MSR_OK)
      return report_error("dc_read", rc);
    readback_ok = len == unit_payload.size() &&
                  std::equal(units, units + len, unit_payload.begin());
    msr_free(units);
  }
  std::printf("read-back: %s\n", readback_ok ? "matches source" : "MISMATCH");

  StringGuard trace;
  if (int rc = msr_cluster_trace(cluster.p, &trace.p); rc != MSR_OK)
    return report_error("trace", rc);
  if (format == "records") std::fputs(trace.p, stdout);
  if (!exact || !readback_ok) return 1;
  if (!trace_path.empty()) {
    if (!write_file(trace_path, trace.p)) {
      std::fprintf(stderr, "error: cannot write %s\n", trace_path.c_str());
      return 1;
    }
    std::printf("trace written: %s\n", trace_path.c_str());
  }
  return 0;
}

int cmd_sweep(uint32_t k, uint32_t d, uint32_t m_from, uint32_t m_to,
              unsigned digits) {
  if (m_from < 1 || m_to < m_from) {
    std::fprintf(stderr, "error: need 1 <= m-from <= m-to\n");
    return 1;
  }
  std::printf("%6s  %-24s %-14s %s\n", "m", "gamma", "decimal", "gamma-d");
  std::string prev;
  bool monotone = true;
  for (uint32_t m = m_from; m <= m_to; ++m) {
    StringGuard gamma, excess;
    if (int rc = msr_gamma_formula(k, d, m, &gamma.p); rc != MSR_OK)
      return report_error("sweep", rc);
    if (int rc = msr_gamma_excess(k, d, m, &excess.p); rc != MSR_OK)
      return report_error("sweep", rc);
    std::printf("%6u  %-24s %-14s %s\n", m, gamma.p,
                decimal(gamma.p, digits).c_str(), excess.p);
    if (!prev.empty()) {
      int cmp = 0;
      msr_rational_cmp(gamma.p, prev.c_str(), &cmp);
      if (k >= 2 ? cmp >= 0 : cmp > 0) monotone = false;
    }
    prev = gamma.p;
  }
  std::printf("monotone decreasing toward d=%u: %s\n", d,
              monotone ? "yes" : "NO");
  return monotone ? 0 : 1;
}

int cmd_demo42(uint64_t a1, uint64_t a2, uint64_t b1, uint64_t b2) {
  CodeGuard code;
  if (int rc = msr_code_scalar42(&code.p); rc != MSR_OK)
    return report_error("demo42", rc);
  std::printf("(4,2,3) exact-repair code over GF(5)\n");
  std::printf("source units: a=(%llu,%llu) b=(%llu,%llu)\n",
              static_cast<unsigned long long>(a1),
              static_cast<unsigned long long>(a2),
              static_cast<unsigned long long>(b1),
              static_cast<unsigned long long>(b2));

  const uint64_t units[4] = {a1 % 5, a2 % 5, b1 % 5, b2 % 5};
  uint64_t blocks[8] = {};
  if (int rc = msr_code_encode(code.p, units, 4, blocks, 8); rc != MSR_OK)
    return report_error("encode", rc);
  const char* labels[4] = {"node 1 (a)", "node 2 (b)",
                           "node 3 (a1+b1, 2a2+b2)", "node 4 (2a1+b1, a2+b2)"};
  for (int i = 0; i < 4; ++i)
    std::printf("  %-24s stores (%llu,%llu)\n", labels[i],
                static_cast<unsigned long long>(blocks[2 * i]),
                static_cast<unsigned long long>(blocks[2 * i + 1]));

  const int rc_verify = verify_and_print(code.p);

  std::printf("repairs (each survivor sends one symbol, gamma = 3 = cutset):\n");
  bool all_exact = true;
  for (uint32_t failed = 1; failed <= 4; ++failed) {
    uint32_t survivors[3];
    uint64_t survivor_blocks[6];
    size_t w = 0;
    for (uint32_t id = 1; id <= 4; ++id) {
      if (id == failed) continue;
      survivors[w] = id;
      survivor_blocks[2 * w] = blocks[2 * (id - 1)];
      survivor_blocks[2 * w + 1] = blocks[2 * (id - 1) + 1];
      ++w;
    }
    uint64_t restored[2] = {};
    uint64_t symbols[3] = {};
    if (int rc = msr_scalar42_repair(code.p, failed, survivors,
                                     survivor_blocks, restored, symbols);
        rc != MSR_OK)
      return report_error("repair", rc);
    const bool exact = restored[0] == blocks[2 * (failed - 1)] &&
                       restored[1] == blocks[2 * (failed - 1) + 1];
    all_exact = all_exact && exact;
    std::printf(
        "  node %u: downloads (%llu,%llu,%llu) from nodes (%u,%u,%u) -> "
        "restored (%llu,%llu) %s\n",
        failed, static_cast<unsigned long long>(symbols[0]),
        static_cast<unsigned long long>(symbols[1]),
        static_cast<unsigned long long>(symbols[2]), survivors[0],
        survivors[1], survivors[2],
        static_cast<unsigned long long>(restored[0]),
        static_cast<unsigned long long>(restored[1]),
        exact ? "[exact]" : "[MISMATCH]");
  }
  return (all_exact && rc_verify == 0) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact-repair MSR storage codes: construction, verification, "
               "repair simulation and bandwidth sweeps"};
  app.require_subcommand(1);

  uint32_t n = 6, k = 3, d = 4, m = 1;
  uint64_t q = 65537, seed = 0;
  std::string out_path, desc_path, file_path, trace_path, format = "table";
  std::vector<uint32_t> helpers;
  uint32_t fail_node = 1;
  bool scalar_baseline = false;
  uint32_t m_from = 1, m_to = 8;
  unsigned digits = 6;
  uint64_t payload_seed = 1, payload_len = 4096;
  uint64_t a1 = 1, a2 = 2, b1 = 3, b2 = 4;

  auto* construct = app.add_subcommand("construct", "construct and verify a code");
  construct->add_option("--n", n, "total nodes");
  construct->add_option("--k", k, "data nodes");
  construct->add_option("--d", d, "repair degree");
  construct->add_option("--m", m, "subsymbol granularity");
  construct->add_option("--q", q, "prime field modulus");
  construct->add_option("--seed", seed, "construction seed");
  construct->add_option("--out", out_path, "descriptor output path");
  construct->add_flag("--scalar-baseline", scalar_baseline,
                      "emit the fixed (4,2,3) GF(5) code");

  auto* verify = app.add_subcommand("verify", "verify a code descriptor");
  verify->add_option("--desc", desc_path, "descriptor path")->required();

  auto* simulate =
      app.add_subcommand("simulate", "ingest, fail, repair, read back");
  simulate->add_option("--desc", desc_path, "descriptor path")->required();
  simulate->add_option("--file", file_path, "payload file (default: synthetic)");
  simulate->add_option("--fail", fail_node, "node to fail")->required();
  simulate->add_option("--helpers", helpers,
                       "explicit helper ids (default: d lowest live)");
  simulate->add_option("--trace", trace_path, "write the event trace here");
  simulate->add_option("--format", format, "table | records");
  simulate->add_option("--payload-seed", payload_seed, "synthetic payload seed");
  simulate->add_option("--payload-bytes", payload_len,
                       "synthetic payload length");

  auto* sweep =
      app.add_subcommand("sweep", "repair bandwidth gamma(m) toward the cutset");
  sweep->add_option("--k", k, "data nodes")->required();
  sweep->add_option("--d", d, "repair degree")->required();
  sweep->add_option("--m-from", m_from, "first m");
  sweep->add_option("--m-to", m_to, "last m");
  sweep->add_option("--digits", digits, "decimal digits");

  auto* demo = app.add_subcommand("demo42", "walk through the (4,2,3) example");
  demo->add_option("--a1", a1, "a1");
  demo->add_option("--a2", a2, "a2");
  demo->add_option("--b1", b1, "b1");
  demo->add_option("--b2", b2, "b2");

  CLI11_PARSE(app, argc, argv);

  if (construct->parsed())
    return cmd_construct(n, k, d, m, q, seed, out_path, scalar_baseline);
  if (verify->parsed()) return cmd_verify(desc_path);
  if (simulate->parsed())
    return cmd_simulate(desc_path, file_path, fail_node, helpers, trace_path,
                        format, payload_seed, payload_len);
  if (sweep->parsed()) return cmd_sweep(k, d, m_from, m_to, digits);
  if (demo->parsed()) return cmd_demo42(a1, a2, b1, b2);
  return 1;
}
