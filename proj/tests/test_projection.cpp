#include <functional>

#include "doctest.h"
#include "msr/code.hpp"
#include "msr/projection.hpp"
#include "msr/prng.hpp"

using msr::build_projection_sets;
using msr::CounterRng;
using msr::DiagonalMatrix;
using msr::enumerate_exponents;
using msr::Errc;
using msr::Error;
using msr::Field;
using msr::ProjectionSet;

TEST_CASE("exponent enumeration") {
  CHECK(enumerate_exponents(2, 1) ==
        std::vector<std::vector<uint32_t>>{{1, 1}});
  CHECK(enumerate_exponents(2, 2) ==
        std::vector<std::vector<uint32_t>>{{1, 1}, {1, 2}, {2, 1}, {2, 2}});
  CHECK(enumerate_exponents(0, 5) == std::vector<std::vector<uint32_t>>{{}});
  CHECK(enumerate_exponents(3, 3).size() == 27);
}

TEST_CASE("m = 1 gives a single product column") {
  Field f(65537);
  DiagonalMatrix g1(f, {2, 3}), g2(f, {5, 7});
  const auto ps = build_projection_sets(f, {g1, g2}, 1);
  CHECK(ps.v_columns() == 1);
  CHECK(ps.vbar_columns() == 4);
  CHECK(ps.V().at(0, 0) == 10);
  CHECK(ps.V().at(1, 0) == 21);
}

TEST_CASE("identity generators collapse both sets onto w") {
  Field f(5);
  const auto id = DiagonalMatrix::identity(f, 3);
  const auto ps = build_projection_sets(f, {id, id}, 2);
  CHECK(ps.v_columns() == 4);
  CHECK(ps.vbar_columns() == 9);
  for (uint64_t c = 0; c < ps.v_columns(); ++c)
    for (size_t t = 0; t < 3; ++t) CHECK(ps.V().at(t, c) == 1);
  CHECK(ps.Vbar().rank() == 1);
}

TEST_CASE("generator times V column lands exactly on a Vbar column") {
  Field f(65537);
  CounterRng rng(77, 0);
  std::vector<DiagonalMatrix> gens;
  const size_t dim = 8;
  for (int j = 0; j < 3; ++j) {
    std::vector<uint64_t> diag(dim);
    for (auto& v : diag) v = rng.nonzero(65537);
    gens.emplace_back(f, std::move(diag));
  }
  const auto ps = build_projection_sets(f, gens, 2);
  for (size_t g = 0; g < gens.size(); ++g) {
    for (uint64_t c = 0; c < ps.v_columns(); ++c) {
      const uint64_t target = ps.vbar_index_after(c, g);
      for (size_t t = 0; t < dim; ++t) {
        CHECK(f.mul(gens[g].entry(t), ps.V().at(t, c)) ==
              ps.Vbar().at(t, target));
      }
    }
  }
}

TEST_CASE("constructed (6,3,4,m=1) instance has a full-rank desired matrix") {
  msr::CodeParams p;
  p.n = 6;
  p.k = 3;
  p.d = 4;
  p.m = 1;
  const auto code = msr::construct_code(p);
  // repairing unit 1 from parities 1,2: generators are the interference
  // submatrices of units 2 and 3
  const Field& f = code.field();
  std::vector<DiagonalMatrix> gens{code.submatrix(1, 2), code.submatrix(1, 3),
                                   code.submatrix(2, 2), code.submatrix(2, 3)};
  const auto ps = build_projection_sets(f, gens, 1);
  auto col = [&](const DiagonalMatrix& g) {
    std::vector<uint64_t> v(ps.dim());
    for (size_t t = 0; t < ps.dim(); ++t)
      v[t] = f.mul(g.entry(t), ps.V().at(t, 0));
    return v;
  };
  const auto c1 = col(code.submatrix(1, 1));
  const auto c2 = col(code.submatrix(2, 1));
  msr::Matrix desired(f, 2, 2);
  for (size_t t = 0; t < 2; ++t) {
    desired.set(t, 0, c1[t]);
    desired.set(t, 1, c2[t]);
  }
  CHECK(desired.rank() == 2);
}

TEST_CASE("dimension and argument validation") {
  Field f(5);
  DiagonalMatrix a(f, {1, 2}), b(f, {1, 2, 3});
  try {
    build_projection_sets(f, {a, b}, 2);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::dimension_mismatch);
  }
  try {
    build_projection_sets(f, {}, 2);  // no generators, no dim
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::bad_argument);
  }
  // empty generator list with an explicit dim is the k = 1 shape
  const auto ps = build_projection_sets(f, {}, 3, 4);
  CHECK(ps.v_columns() == 1);
  CHECK(ps.vbar_columns() == 1);
  for (size_t t = 0; t < 4; ++t) CHECK(ps.V().at(t, 0) == 1);
}
