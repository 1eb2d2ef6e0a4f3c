#include <functional>

#include "doctest.h"
#include "msr/code.hpp"
#include "msr/prng.hpp"
#include "msr/repair.hpp"
#include "msr/scalar42.hpp"
#include "oracles.hpp"

using msr::CodeInstance;
using msr::CodeParams;
using msr::construct_code;
using msr::CounterRng;
using msr::DiagonalMatrix;
using msr::Errc;
using msr::Error;
using msr::Field;
using msr::load_code;

namespace {

Errc code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::ok;
}

CodeParams p634(uint32_t m = 1, uint64_t seed = 0) {
  CodeParams p;
  p.n = 6;
  p.k = 3;
  p.d = 4;
  p.m = m;
  p.seed = seed;
  return p;
}

std::vector<std::vector<uint64_t>> random_units(const CodeInstance& code,
                                                uint64_t seed) {
  CounterRng rng(seed, 999);
  std::vector<std::vector<uint64_t>> units(code.params().k);
  for (auto& u : units) {
    u.resize(code.derived().alpha_sub);
    for (auto& v : u) v = rng.below(code.params().q);
  }
  return units;
}

}  // namespace

TEST_CASE("construction succeeds at the first attempt for q = 65537") {
  const auto code = construct_code(p634());
  CHECK(code.attempt() == 0);
  CHECK(code.verified());
  CHECK(code.mds_report()->entries.size() == 20);
  CHECK(code.mds_report()->all_ok());
  CHECK(code.rank_report()->entries.size() == 6);
  CHECK(code.rank_report()->all_ok());
  for (uint32_t i = 1; i <= 3; ++i)
    for (uint32_t l = 1; l <= 3; ++l)
      CHECK(code.submatrix(i, l).all_nonzero());
}

TEST_CASE("construction fails loudly when the field collapses") {
  auto p = p634();
  p.q = 2;  // only diagonal value is 1, projections collapse
  CHECK(code_of([&] { construct_code(p); }) == Errc::construction_failed);
}

TEST_CASE("inadmissible parameters are rejected") {
  CodeParams p;
  p.n = 6;
  p.k = 3;
  p.d = 2;
  CHECK(code_of([&] { construct_code(p); }) == Errc::inadmissible);
}

TEST_CASE("encode basics") {
  const auto code = construct_code(p634());
  const size_t alpha = code.derived().alpha_sub;

  std::vector<std::vector<uint64_t>> zeros(3, std::vector<uint64_t>(alpha, 0));
  for (const auto& b : code.encode(zeros))
    for (uint64_t v : b) CHECK(v == 0);

  // only unit 1 nonzero: parity i stores G(i,1) * w1
  auto units = zeros;
  units[0] = {5, 7};
  const auto blocks = code.encode(units);
  CHECK(blocks[0] == units[0]);
  CHECK(blocks[1] == zeros[1]);
  for (uint32_t i = 1; i <= 3; ++i) {
    const auto expect = code.submatrix(i, 1).apply(units[0]);
    CHECK(blocks[2 + i] == expect);
  }

  auto bad = units;
  bad[0].pop_back();
  CHECK(code_of([&] { code.encode(bad); }) == Errc::length_mismatch);
}

TEST_CASE("encoding is linear") {
  const auto code = construct_code(p634(2, 3));
  const auto u = random_units(code, 1);
  const auto v = random_units(code, 2);
  auto sum = u;
  const auto& f = code.field();
  for (size_t l = 0; l < u.size(); ++l)
    for (size_t t = 0; t < u[l].size(); ++t)
      sum[l][t] = f.add(u[l][t], v[l][t]);
  const auto bu = code.encode(u);
  const auto bv = code.encode(v);
  const auto bsum = code.encode(sum);
  for (size_t i = 0; i < bu.size(); ++i)
    for (size_t t = 0; t < bu[i].size(); ++t)
      CHECK(bsum[i][t] == f.add(bu[i][t], bv[i][t]));
}

TEST_CASE("every k-subset decodes the source (composite oracle)") {
  const auto code = construct_code(p634());
  const auto units = random_units(code, 77);
  const auto blocks = code.encode(units);
  std::vector<uint64_t> flat;
  for (const auto& u : units) flat.insert(flat.end(), u.begin(), u.end());
  for (const auto& subset : msr::k_subsets(6, 3)) {
    const auto decoded = oracle::decode_by_composite(code, subset, blocks);
    CHECK(decoded == flat);
  }
}

TEST_CASE("verify_mds flags a duplicated parity") {
  // G(.,l) identical for parities 1 and 2 forces rank deficiency on any
  // subset containing both
  const auto good = construct_code(p634());
  const auto& f = good.field();
  std::vector<DiagonalMatrix> mats;
  for (uint32_t i = 1; i <= 3; ++i)
    for (uint32_t l = 1; l <= 3; ++l)
      mats.push_back(good.submatrix(i == 2 ? 1 : i, l));
  const CodeInstance evil(p634(), mats, CodeInstance::Kind::explicit_matrices,
                          0);
  const auto report = msr::verify_mds(evil);
  CHECK_FALSE(report.all_ok());
  for (const auto& e : report.entries) {
    const bool has_both =
        std::count(e.subset.begin(), e.subset.end(), 4) &&
        std::count(e.subset.begin(), e.subset.end(), 5);
    if (has_both) CHECK_FALSE(e.ok);
  }
  // systematic subset always passes
  CHECK(report.entries.front().subset == std::vector<uint32_t>{1, 2, 3});
  CHECK(report.entries.front().ok);
}

TEST_CASE("descriptor round trip, seeded") {
  const auto code = construct_code(p634(2, 42));
  const auto text = msr::describe_code(code);
  const auto loaded = load_code(text);
  CHECK(loaded.same_code(code));
  CHECK(msr::describe_code(loaded) == text);
}

TEST_CASE("descriptor round trip, explicit and scalar") {
  const auto good = construct_code(p634());
  std::vector<DiagonalMatrix> mats;
  for (uint32_t i = 1; i <= 3; ++i)
    for (uint32_t l = 1; l <= 3; ++l) mats.push_back(good.submatrix(i, l));
  const CodeInstance exp(p634(), mats, CodeInstance::Kind::explicit_matrices,
                         0);
  const auto text = msr::describe_code(exp);
  CHECK(text.find("generator=explicit") != std::string::npos);
  const auto loaded = load_code(text);
  CHECK(loaded.same_code(exp));
  CHECK(loaded.verified());

  const auto sc = msr::build_42();
  const auto stext = msr::describe_code(*sc.embedding);
  const auto sloaded = load_code(stext);
  CHECK(sloaded.scalar_baseline());
  CHECK(sloaded.same_code(*sc.embedding));
  CHECK(msr::describe_code(sloaded) == stext);
}

TEST_CASE("descriptor parse errors") {
  const auto code = construct_code(p634());
  const auto text = msr::describe_code(code);

  CHECK(code_of([&] { load_code(text.substr(0, text.size() / 2)); }) ==
        Errc::parse_error);
  CHECK(code_of([&] { load_code("msrcode v2\nn=6\n"); }) ==
        Errc::version_mismatch);
  CHECK(code_of([&] { load_code("garbage"); }) == Errc::parse_error);
  CHECK(code_of([&] { load_code(text + "n=6\n"); }) == Errc::parse_error);
  CHECK(code_of([&] { load_code(text + "bogus=1\n"); }) == Errc::parse_error);

  auto swapped = text;
  const auto pos = swapped.find("generator=splitmix64-v1");
  swapped.replace(pos, 23, "generator=mystery-rng-9");
  CHECK(code_of([&] { load_code(swapped); }) == Errc::version_mismatch);
}

TEST_CASE("composite matrix matches block structure") {
  const auto code = construct_code(p634());
  const auto m = msr::composite_matrix(code, {1, 2, 3});
  CHECK(m == msr::Matrix::identity(code.field(), 6));
  const auto mp = msr::composite_matrix(code, {4, 5, 6});
  CHECK(mp.rank() == 6);
  CHECK(mp.at(0, 0) == code.submatrix(1, 1).entry(0));
  CHECK(mp.at(1, 3) == code.submatrix(1, 2).entry(1));
}

TEST_CASE("k subsets enumerate lexicographically") {
  const auto subsets = msr::k_subsets(4, 2);
  CHECK(subsets == std::vector<std::vector<uint32_t>>{
                       {1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}});
  CHECK(msr::k_subsets(6, 3).size() == 20);
}
