#include <functional>
#include <vector>

#include "doctest.h"
#include "msr/matrix.hpp"
#include "msr/prng.hpp"
#include "oracles.hpp"

using msr::CounterRng;
using msr::DiagonalMatrix;
using msr::Errc;
using msr::Error;
using msr::Field;
using msr::Matrix;

namespace {
Errc code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::ok;
}
}  // namespace

TEST_CASE("rank examples") {
  Field gf5(5);
  CHECK(Matrix::identity(gf5, 4).rank() == 4);
  CHECK(Matrix::from_rows(gf5, {{1, 2}, {2, 4}}).rank() == 1);
  const auto m = Matrix::from_rows(gf5, {{1, 2}, {2, 1}});
  CHECK(oracle::det_cofactor(gf5, m) == 2);  // -3 mod 5
  CHECK(m.rank() == 2);
}

TEST_CASE("rank agrees with the exhaustive-minor oracle") {
  Field gf5(5);
  CounterRng rng(2024, 0);
  for (int trial = 0; trial < 60; ++trial) {
    const size_t rows = 1 + rng.below(4), cols = 1 + rng.below(4);
    Matrix m(gf5, rows, cols);
    for (size_t i = 0; i < rows; ++i)
      for (size_t j = 0; j < cols; ++j) m.set(i, j, rng.below(5));
    CHECK(m.rank() == oracle::rank_by_minors(gf5, m));
  }
}

TEST_CASE("inverse examples") {
  Field gf5(5);
  const auto id = Matrix::identity(gf5, 3);
  CHECK(id.inverse() == id);
  const auto d = Matrix::from_rows(gf5, {{2, 0}, {0, 2}});
  CHECK(d.inverse() == Matrix::from_rows(gf5, {{3, 0}, {0, 3}}));
  CHECK(code_of([&] {
          Matrix::from_rows(gf5, {{1, 2}, {2, 4}}).inverse();
        }) == Errc::singular);
}

TEST_CASE("inverse property on random nonsingular matrices") {
  Field f(65537);
  CounterRng rng(5, 5);
  int checked = 0;
  while (checked < 20) {
    const size_t n = 1 + rng.below(6);
    Matrix m(f, n, n);
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) m.set(i, j, rng.below(65537));
    if (m.rank() != n) continue;
    CHECK(m.mul(m.inverse()) == Matrix::identity(f, n));
    ++checked;
  }
}

TEST_CASE("solve examples") {
  Field gf5(5);
  const auto a = Matrix::from_rows(gf5, {{1, 2}, {2, 1}});
  const auto x = a.solve(std::vector<uint64_t>{0, 4});
  CHECK(x == std::vector<uint64_t>{1, 2});

  const auto id = Matrix::identity(gf5, 3);
  CHECK(id.solve(std::vector<uint64_t>{3, 1, 4}) ==
        std::vector<uint64_t>{3, 1, 4});

  CHECK(code_of([&] {
          Matrix::from_rows(gf5, {{1, 2}, {2, 4}})
              .solve(std::vector<uint64_t>{1, 0});
        }) == Errc::inconsistent);
  CHECK(code_of([&] {
          Matrix::from_rows(gf5, {{1, 2}, {2, 4}})
              .solve(std::vector<uint64_t>{1, 2});
        }) == Errc::singular);
}

TEST_CASE("solve with more rows than columns") {
  Field gf5(5);
  const auto a = Matrix::from_rows(gf5, {{1, 0}, {0, 1}, {1, 1}});
  CHECK(a.solve(std::vector<uint64_t>{2, 3, 0}) ==
        std::vector<uint64_t>{2, 3});
  CHECK(code_of([&] {
          a.solve(std::vector<uint64_t>{2, 3, 1});
        }) == Errc::inconsistent);
}

TEST_CASE("diagonal products commute") {
  Field f(65537);
  CounterRng rng(11, 0);
  for (int trial = 0; trial < 50; ++trial) {
    const size_t dim = 1 + rng.below(16);
    std::vector<uint64_t> d1(dim), d2(dim);
    for (auto& v : d1) v = rng.below(65537);
    for (auto& v : d2) v = rng.below(65537);
    DiagonalMatrix a(f, d1), b(f, d2);
    CHECK(a.mul(b) == b.mul(a));
    // and the compact product matches the dense one
    CHECK(a.mul(b).dense() == a.dense().mul(b.dense()));
  }
}

TEST_CASE("diagonal inverse and pow") {
  Field gf5(5);
  DiagonalMatrix d(gf5, {2, 3});
  CHECK(d.inverse() == DiagonalMatrix(gf5, {3, 2}));
  CHECK(d.pow(0) == DiagonalMatrix::identity(gf5, 2));
  CHECK(d.pow(3) == DiagonalMatrix(gf5, {3, 2}));  // 8 mod 5, 27 mod 5
  CHECK(code_of([&] { DiagonalMatrix(gf5, {1, 0}).inverse(); }) ==
        Errc::singular);
}

TEST_CASE("shape mismatches are rejected") {
  Field gf5(5);
  Matrix a(gf5, 2, 3), b(gf5, 2, 3);
  CHECK(code_of([&] { a.mul(b); }) == Errc::dimension_mismatch);
  CHECK(code_of([&] { a.solve(std::vector<uint64_t>{1}); }) ==
        Errc::dimension_mismatch);
  Field gf7(7);
  Matrix c(gf7, 2, 3);
  CHECK(code_of([&] { a.add(c); }) == Errc::dimension_mismatch);
}
