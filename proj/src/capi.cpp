#include "msrcode.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <span>
#include <string>

#include "msr/cluster.hpp"
#include "msr/code.hpp"
#include "msr/repair.hpp"
#include "msr/scalar42.hpp"

struct msr_code {
  std::shared_ptr<const msr::CodeInstance> inst;
};

struct msr_cluster {
  msr::Cluster cluster;
};

namespace {

thread_local std::string g_last_error;

int set_error(msr::Errc code, const std::string& message) {
  g_last_error = message;
  return static_cast<int>(code);
}

template <typename Fn>
int guarded(Fn&& fn) {
  try {
    fn();
    return MSR_OK;
  } catch (const msr::Error& e) {
    return set_error(e.code(), e.what());
  } catch (const std::exception& e) {
    return set_error(msr::Errc::internal, e.what());
  } catch (...) {
    return set_error(msr::Errc::internal, "unknown error");
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) msr::fail(msr::Errc::internal, "out of memory");
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <typename T>
T* dup_array(const T* data, size_t count) {
  T* out = static_cast<T*>(std::malloc(count * sizeof(T)));
  if (!out && count) msr::fail(msr::Errc::internal, "out of memory");
  if (count) std::memcpy(out, data, count * sizeof(T));
  return out;
}

void require(bool ok, const char* what) {
  if (!ok) msr::fail(msr::Errc::bad_argument, what);
}

msr::Rational parse_or_throw(const char* text) {
  require(text != nullptr, "null rational string");
  return msr::parse_rational(text);
}

}  // namespace

extern "C" {

const char* msr_status_name(int status) {
  return msr::errc_name(static_cast<msr::Errc>(status));
}

const char* msr_last_error(void) { return g_last_error.c_str(); }

void msr_free(void* p) { std::free(p); }

int msr_code_construct(uint32_t n, uint32_t k, uint32_t d, uint32_t m,
                       uint64_t q, uint64_t seed, msr_code** out) {
  return guarded([&] {
    require(out != nullptr, "null output pointer");
    msr::CodeParams p;
    p.n = n;
    p.k = k;
    p.d = d;
    p.m = m;
    p.q = q;
    p.seed = seed;
    auto inst =
        std::make_shared<const msr::CodeInstance>(msr::construct_code(p));
    *out = new msr_code{std::move(inst)};
  });
}

int msr_code_scalar42(msr_code** out) {
  return guarded([&] {
    require(out != nullptr, "null output pointer");
    *out = new msr_code{msr::build_42().embedding};
  });
}

int msr_code_load(const char* text, msr_code** out) {
  return guarded([&] {
    require(text != nullptr && out != nullptr, "null argument");
    auto inst = std::make_shared<const msr::CodeInstance>(
        msr::load_code(std::string(text)));
    *out = new msr_code{std::move(inst)};
  });
}

int msr_code_describe(const msr_code* code, char** out_text) {
  return guarded([&] {
    require(code != nullptr && out_text != nullptr, "null argument");
    *out_text = dup_string(msr::describe_code(*code->inst));
  });
}

void msr_code_free(msr_code* code) { delete code; }

int msr_code_get_info(const msr_code* code, msr_code_info* out) {
  return guarded([&] {
    require(code != nullptr && out != nullptr, "null argument");
    const auto& p = code->inst->params();
    const auto& dp = code->inst->derived();
    out->n = p.n;
    out->k = p.k;
    out->d = p.d;
    out->m = p.m;
    out->q = p.q;
    out->seed = p.seed;
    out->exponent_count = dp.N;
    out->subsymbols_per_unit = dp.B;
    out->subsymbols_per_node = dp.alpha_sub;
    out->total_subsymbols = dp.M_sub;
    out->file_units = dp.M_units;
    out->attempts_used = code->inst->attempt() + 1;
    out->is_scalar_baseline = code->inst->scalar_baseline() ? 1 : 0;
  });
}

int msr_code_verify(const msr_code* code, msr_verify_summary* out) {
  return guarded([&] {
    require(code != nullptr && out != nullptr, "null argument");
    const auto& inst = *code->inst;
    if (inst.scalar_baseline()) {
      const auto sc = msr::build_42();
      const auto mds = msr::verify_mds(inst);
      const auto ranks = msr::scalar42_rank_conditions(sc);
      out->mds_total = mds.entries.size();
      out->mds_passed = mds.passed();
      out->repair_total = 4;
      out->repair_passed = (ranks.node1 ? 1 : 0) + (ranks.node2 ? 1 : 0) +
                           (ranks.node3 ? 1 : 0) + (ranks.node4 ? 1 : 0);
    } else {
      // cached reports when the instance was verified at construction/load
      const msr::MdsReport* mds = inst.mds_report();
      const msr::RankReport* ranks = inst.rank_report();
      msr::MdsReport fresh_mds;
      msr::RankReport fresh_ranks;
      if (!mds) {
        fresh_mds = msr::verify_mds(inst);
        mds = &fresh_mds;
      }
      if (!ranks) {
        fresh_ranks = msr::verify_repair_ranks(inst);
        ranks = &fresh_ranks;
      }
      out->mds_total = mds->entries.size();
      out->mds_passed = mds->passed();
      out->repair_total = static_cast<uint32_t>(ranks->entries.size());
      out->repair_passed = static_cast<uint32_t>(ranks->passed());
    }
    out->all_ok =
        (out->mds_total == out->mds_passed &&
         out->repair_total == out->repair_passed)
            ? 1
            : 0;
  });
}

int msr_code_encode(const msr_code* code, const uint64_t* units,
                    size_t units_len, uint64_t* blocks, size_t blocks_len) {
  return guarded([&] {
    require(code != nullptr && units != nullptr && blocks != nullptr,
            "null argument");
    const auto& p = code->inst->params();
    const auto& dp = code->inst->derived();
    if (units_len != static_cast<size_t>(p.k) * dp.alpha_sub)
      msr::fail(msr::Errc::length_mismatch, "units_len must be k*alpha_sub");
    if (blocks_len != static_cast<size_t>(p.n) * dp.alpha_sub)
      msr::fail(msr::Errc::length_mismatch, "blocks_len must be n*alpha_sub");
    std::vector<std::vector<uint64_t>> u(p.k);
    for (uint32_t l = 0; l < p.k; ++l)
      u[l].assign(units + static_cast<size_t>(l) * dp.alpha_sub,
                  units + static_cast<size_t>(l + 1) * dp.alpha_sub);
    const auto out_blocks = code->inst->encode(u);
    for (uint32_t i = 0; i < p.n; ++i)
      std::memcpy(blocks + static_cast<size_t>(i) * dp.alpha_sub,
                  out_blocks[i].data(), dp.alpha_sub * sizeof(uint64_t));
  });
}

int msr_cutset_point(uint32_t n, uint32_t k, uint32_t d, uint64_t file_units,
                     char** alpha, char** gamma, char** beta) {
  return guarded([&] {
    require(alpha != nullptr && gamma != nullptr && beta != nullptr,
            "null output pointer");
    const auto cp = msr::cutset_point(n, k, d, msr::Rational(file_units));
    *alpha = dup_string(msr::rational_str(cp.alpha));
    *gamma = dup_string(msr::rational_str(cp.gamma));
    *beta = dup_string(msr::rational_str(cp.beta));
  });
}

int msr_gamma_formula(uint32_t k, uint32_t d, uint32_t m, char** gamma) {
  return guarded([&] {
    require(gamma != nullptr, "null output pointer");
    *gamma = dup_string(msr::rational_str(msr::gamma_formula(k, d, m)));
  });
}

int msr_gamma_excess(uint32_t k, uint32_t d, uint32_t m, char** excess) {
  return guarded([&] {
    require(excess != nullptr, "null output pointer");
    const auto g = msr::gamma_formula(k, d, m) - msr::Rational(d);
    *excess = dup_string(msr::rational_str(g));
  });
}

int msr_rational_to_decimal(const char* rational, unsigned digits, char** out) {
  return guarded([&] {
    require(out != nullptr, "null output pointer");
    *out = dup_string(
        msr::rational_decimal(parse_or_throw(rational), digits));
  });
}

int msr_rational_cmp(const char* a, const char* b, int* cmp) {
  return guarded([&] {
    require(cmp != nullptr, "null output pointer");
    const auto ra = parse_or_throw(a);
    const auto rb = parse_or_throw(b);
    *cmp = ra < rb ? -1 : (ra == rb ? 0 : 1);
  });
}

int msr_cluster_ingest(const msr_code* code, const uint8_t* bytes, size_t len,
                       msr_cluster** out) {
  return guarded([&] {
    require(code != nullptr && out != nullptr, "null argument");
    require(bytes != nullptr || len == 0, "null payload with nonzero length");
    *out = new msr_cluster{
        msr::Cluster::ingest(code->inst, std::span<const uint8_t>(bytes, len))};
  });
}

int msr_cluster_ingest_units(const msr_code* code, const uint64_t* units,
                             size_t len, msr_cluster** out) {
  return guarded([&] {
    require(code != nullptr && units != nullptr && out != nullptr,
            "null argument");
    const auto& p = code->inst->params();
    const auto& dp = code->inst->derived();
    if (len != static_cast<size_t>(p.k) * dp.alpha_sub)
      msr::fail(msr::Errc::length_mismatch, "len must be k*alpha_sub");
    std::vector<std::vector<uint64_t>> u(p.k);
    for (uint32_t l = 0; l < p.k; ++l)
      u[l].assign(units + static_cast<size_t>(l) * dp.alpha_sub,
                  units + static_cast<size_t>(l + 1) * dp.alpha_sub);
    *out = new msr_cluster{msr::Cluster::ingest_units(code->inst, u)};
  });
}

int msr_cluster_fail(msr_cluster* cluster, uint32_t node) {
  return guarded([&] {
    require(cluster != nullptr, "null cluster");
    cluster->cluster.fail(node);
  });
}

int msr_cluster_repair(msr_cluster* cluster, const uint32_t* helpers,
                       size_t helper_count) {
  return guarded([&] {
    require(cluster != nullptr, "null cluster");
    std::vector<uint32_t> h;
    if (helpers && helper_count) h.assign(helpers, helpers + helper_count);
    cluster->cluster.run_repair(h);
  });
}

int msr_cluster_read(msr_cluster* cluster, const uint32_t* nodes, size_t count,
                     uint8_t** bytes, size_t* len) {
  return guarded([&] {
    require(cluster != nullptr && nodes != nullptr && bytes != nullptr &&
                len != nullptr,
            "null argument");
    const auto out =
        cluster->cluster.dc_read(std::vector<uint32_t>(nodes, nodes + count));
    *bytes = dup_array(out.data(), out.size());
    *len = out.size();
  });
}

int msr_cluster_read_units(msr_cluster* cluster, const uint32_t* nodes,
                           size_t count, uint64_t** units, size_t* len) {
  return guarded([&] {
    require(cluster != nullptr && nodes != nullptr && units != nullptr &&
                len != nullptr,
            "null argument");
    const auto out = cluster->cluster.dc_read_units(
        std::vector<uint32_t>(nodes, nodes + count));
    std::vector<uint64_t> flat;
    for (const auto& u : out) flat.insert(flat.end(), u.begin(), u.end());
    *units = dup_array(flat.data(), flat.size());
    *len = flat.size();
  });
}

int msr_cluster_node_block(const msr_cluster* cluster, uint32_t node,
                           uint64_t** data, size_t* len) {
  return guarded([&] {
    require(cluster != nullptr && data != nullptr && len != nullptr,
            "null argument");
    const auto& d = cluster->cluster.node_data(node);
    *data = dup_array(d.data(), d.size());
    *len = d.size();
  });
}

int msr_cluster_last_repair(const msr_cluster* cluster, uint64_t* subsymbols,
                            uint64_t* stripes, char** gamma) {
  return guarded([&] {
    require(cluster != nullptr, "null cluster");
    const auto last = cluster->cluster.last_repair();
    if (!last) msr::fail(msr::Errc::no_failure, "no repair has run");
    if (subsymbols) *subsymbols = last->subsymbols;
    if (stripes) *stripes = last->stripes;
    if (gamma) *gamma = dup_string(msr::rational_str(last->gamma));
  });
}

int msr_cluster_trace(const msr_cluster* cluster, char** text) {
  return guarded([&] {
    require(cluster != nullptr && text != nullptr, "null argument");
    *text = dup_string(cluster->cluster.trace_text());
  });
}

int msr_cluster_metrics(const msr_cluster* cluster, char** text) {
  return guarded([&] {
    require(cluster != nullptr && text != nullptr, "null argument");
    *text = dup_string(cluster->cluster.metrics().to_text());
  });
}

void msr_cluster_free(msr_cluster* cluster) { delete cluster; }

int msr_scalar42_repair(const msr_code* code, uint32_t failed,
                        const uint32_t* survivors,
                        const uint64_t* survivor_blocks, uint64_t* restored,
                        uint64_t* download_symbols) {
  return guarded([&] {
    require(code != nullptr && survivors != nullptr &&
                survivor_blocks != nullptr && restored != nullptr &&
                download_symbols != nullptr,
            "null argument");
    if (!code->inst->scalar_baseline())
      msr::fail(msr::Errc::bad_argument,
                "code is not the scalar (4,2,3) baseline");
    msr::BlockMap blocks;
    for (size_t i = 0; i < 3; ++i)
      blocks[survivors[i]] = {survivor_blocks[2 * i],
                              survivor_blocks[2 * i + 1]};
    const auto rep = msr::repair_42(msr::build_42(), failed, blocks);
    restored[0] = rep.restored[0];
    restored[1] = rep.restored[1];
    // downloads come back ascending by id; report them in caller order
    for (size_t i = 0; i < 3; ++i) {
      for (const auto& [id, sym] : rep.downloads)
        if (id == survivors[i]) download_symbols[i] = sym;
    }
  });
}

}  // extern "C"
