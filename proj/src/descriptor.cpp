#include <map>
#include <sstream>

#include "msr/code.hpp"
#include "msr/prng.hpp"
#include "msr/repair.hpp"
#include "msr/scalar42.hpp"

namespace msr {

namespace {

constexpr const char* kHeader = "msrcode v1";
constexpr const char* kGeneratorExplicit = "explicit";
constexpr const char* kGeneratorScalar42 = "scalar42-v1";

uint64_t parse_u64(const std::string& s, const std::string& what) {
  if (s.empty()) fail(Errc::parse_error, "empty value for " + what);
  for (char c : s)
    if (c < '0' || c > '9')
      fail(Errc::parse_error, "bad integer for " + what + ": " + s);
  try {
    return std::stoull(s);
  } catch (...) {
    fail(Errc::parse_error, "integer out of range for " + what + ": " + s);
  }
}

std::string matrix_lines(const CodeInstance& code) {
  std::string out;
  const auto& p = code.params();
  for (uint32_t i = 1; i <= p.n - p.k; ++i) {
    for (uint32_t l = 1; l <= p.k; ++l) {
      out += "G " + std::to_string(i) + " " + std::to_string(l) + " =";
      const auto& diag = code.submatrix(i, l).diag();
      for (size_t t = 0; t < diag.size(); ++t)
        out += (t == 0 ? " " : ",") + std::to_string(diag[t]);
      out += "\n";
    }
  }
  return out;
}

}  // namespace

std::string describe_code(const CodeInstance& code) {
  const auto& p = code.params();
  std::string gen;
  switch (code.kind()) {
    case CodeInstance::Kind::random_draw: gen = CounterRng::kGeneratorId; break;
    case CodeInstance::Kind::explicit_matrices: gen = kGeneratorExplicit; break;
    case CodeInstance::Kind::scalar_baseline: gen = kGeneratorScalar42; break;
  }
  std::string out = std::string(kHeader) + "\n";
  out += "n=" + std::to_string(p.n) + "\n";
  out += "k=" + std::to_string(p.k) + "\n";
  out += "d=" + std::to_string(p.d) + "\n";
  out += "m=" + std::to_string(p.m) + "\n";
  out += "q=" + std::to_string(p.q) + "\n";
  out += "generator=" + gen + "\n";
  out += "seed=" + std::to_string(p.seed) + "\n";
  if (code.kind() != CodeInstance::Kind::random_draw) out += matrix_lines(code);
  return out;
}

CodeInstance load_code(const std::string& text) {
  std::stringstream ss(text);
  std::string line;
  if (!std::getline(ss, line)) fail(Errc::parse_error, "empty descriptor");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kHeader) {
    if (line.rfind("msrcode ", 0) == 0)
      fail(Errc::version_mismatch, "unsupported descriptor version: " + line);
    fail(Errc::parse_error, "not a code descriptor");
  }

  std::map<std::string, std::string> kv;
  struct GLine {
    uint32_t i, l;
    std::vector<uint64_t> diag;
  };
  std::vector<GLine> gl;
  while (std::getline(ss, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.rfind("G ", 0) == 0) {
      std::stringstream ls(line.substr(2));
      uint64_t i = 0, l = 0;
      std::string eq, entries;
      if (!(ls >> i >> l >> eq) || eq != "=" || !(ls >> entries))
        fail(Errc::parse_error, "bad matrix line: " + line);
      std::string rest;
      if (ls >> rest) fail(Errc::parse_error, "trailing junk on matrix line");
      GLine g;
      g.i = static_cast<uint32_t>(i);
      g.l = static_cast<uint32_t>(l);
      std::stringstream es(entries);
      std::string tok;
      while (std::getline(es, tok, ','))
        g.diag.push_back(parse_u64(tok, "matrix entry"));
      gl.push_back(std::move(g));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      fail(Errc::parse_error, "expected key=value, got: " + line);
    const std::string key = line.substr(0, eq);
    if (kv.count(key)) fail(Errc::parse_error, "duplicate key: " + key);
    kv[key] = line.substr(eq + 1);
  }

  for (const char* req : {"n", "k", "d", "m", "q", "generator", "seed"})
    if (!kv.count(req))
      fail(Errc::parse_error, std::string("missing key: ") + req);
  for (const auto& [key, val] : kv) {
    if (key != "n" && key != "k" && key != "d" && key != "m" && key != "q" &&
        key != "generator" && key != "seed")
      fail(Errc::parse_error, "unknown key: " + key);
  }

  CodeParams p;
  p.n = static_cast<uint32_t>(parse_u64(kv["n"], "n"));
  p.k = static_cast<uint32_t>(parse_u64(kv["k"], "k"));
  p.d = static_cast<uint32_t>(parse_u64(kv["d"], "d"));
  p.m = static_cast<uint32_t>(parse_u64(kv["m"], "m"));
  p.q = parse_u64(kv["q"], "q");
  p.seed = parse_u64(kv["seed"], "seed");
  const std::string gen = kv["generator"];

  if (gen == CounterRng::kGeneratorId) {
    if (!gl.empty())
      fail(Errc::parse_error,
           "seeded descriptors must not carry explicit matrices");
    return construct_code(p);  // deterministic: reproduces the instance
  }
  if (gen != kGeneratorExplicit && gen != kGeneratorScalar42)
    fail(Errc::version_mismatch, "unknown generator id: " + gen);

  validate_params(p);
  const DerivedParams dp = derive_params(p);
  const size_t expected = static_cast<size_t>(p.n - p.k) * p.k;
  if (gl.size() != expected)
    fail(Errc::parse_error, "expected " + std::to_string(expected) +
                                " matrix lines, got " +
                                std::to_string(gl.size()));
  const Field field(p.q);
  std::vector<std::vector<uint64_t>> slots(expected);
  for (const auto& g : gl) {
    if (g.i < 1 || g.i > p.n - p.k || g.l < 1 || g.l > p.k)
      fail(Errc::parse_error, "matrix index out of range");
    const size_t idx = static_cast<size_t>(g.i - 1) * p.k + (g.l - 1);
    if (!slots[idx].empty())
      fail(Errc::parse_error, "duplicate matrix line");
    if (g.diag.size() != dp.alpha_sub)
      fail(Errc::parse_error, "matrix needs alpha_sub diagonal entries");
    for (uint64_t v : g.diag) {
      if (v >= p.q) fail(Errc::parse_error, "matrix entry not reduced mod q");
      if (v == 0) fail(Errc::parse_error, "matrix entry must be nonzero");
    }
    slots[idx] = g.diag;
  }
  for (const auto& s : slots)
    if (s.empty()) fail(Errc::parse_error, "missing matrix line");

  std::vector<DiagonalMatrix> mats;
  mats.reserve(expected);
  for (auto& s : slots) mats.emplace_back(field, std::move(s));

  if (gen == kGeneratorScalar42) {
    const auto fixed = build_42();
    CodeInstance inst(p, std::move(mats), CodeInstance::Kind::scalar_baseline,
                      0);
    if (!inst.same_code(*fixed.embedding))
      fail(Errc::parse_error,
           "scalar42 descriptor does not match the fixed code");
    return inst;
  }

  CodeInstance inst(p, std::move(mats), CodeInstance::Kind::explicit_matrices,
                    0);
  inst.attach_reports(std::make_shared<MdsReport>(verify_mds(inst)),
                      std::make_shared<RankReport>(verify_repair_ranks(inst)));
  return inst;
}

}  // namespace msr
