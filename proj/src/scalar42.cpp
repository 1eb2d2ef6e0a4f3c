#include "msr/scalar42.hpp"

#include <algorithm>

namespace msr {

namespace {

// Columns u, w as a 2x2 matrix for the rank-2 conditions.
bool rank2(const Field& f, const std::vector<uint64_t>& u,
           const std::vector<uint64_t>& w) {
  Matrix m(f, 2, 2);
  m.set(0, 0, u[0]);
  m.set(1, 0, u[1]);
  m.set(0, 1, w[0]);
  m.set(1, 1, w[1]);
  return m.rank() == 2;
}

struct PrimedPair {
  DiagonalMatrix A1p, B1p, A2p, B2p;
};

// Remap so the parity pair becomes systematic: per position, invert the 2x2
// grid [[A1,B1],[A2,B2]]; node 1 re-encodes as A1' a' + B1' b', node 2 as
// A2' a' + B2' b'.
PrimedPair primed_matrices(const Scalar42Code& code) {
  const Field& f = code.gf5;
  std::vector<uint64_t> a1(2), b1(2), a2(2), b2(2);
  for (size_t t = 0; t < 2; ++t) {
    Matrix grid(f, 2, 2);
    grid.set(0, 0, code.A1.entry(t));
    grid.set(0, 1, code.B1.entry(t));
    grid.set(1, 0, code.A2.entry(t));
    grid.set(1, 1, code.B2.entry(t));
    const Matrix inv = grid.inverse();
    a1[t] = inv.at(0, 0);
    b1[t] = inv.at(0, 1);
    a2[t] = inv.at(1, 0);
    b2[t] = inv.at(1, 1);
  }
  return PrimedPair{DiagonalMatrix(f, a1), DiagonalMatrix(f, b1),
                    DiagonalMatrix(f, a2), DiagonalMatrix(f, b2)};
}

uint64_t project(const Field& f, const std::vector<uint64_t>& block,
                 const std::vector<uint64_t>& v) {
  return f.add(f.mul(block[0], v[0]), f.mul(block[1], v[1]));
}

// One systematic-style repair: the helper holding the intact unit projects by
// v; the two mixture helpers project by Mi^-1 v so their interference aligns
// with that download; solve the 2x2 desired system.
std::array<uint64_t, 2> aligned_pair_repair(
    const Field& f, const std::array<uint64_t, 2>& v,
    const DiagonalMatrix& D1, const DiagonalMatrix& M1,
    const DiagonalMatrix& D2, const DiagonalMatrix& M2,
    uint64_t plain_download, uint64_t mix1_download, uint64_t mix2_download) {
  const std::vector<uint64_t> vv{v[0], v[1]};
  const auto u1 = D1.apply(M1.inverse().apply(vv));
  const auto u2 = D2.apply(M2.inverse().apply(vv));
  const uint64_t r1 = f.sub(mix1_download, plain_download);
  const uint64_t r2 = f.sub(mix2_download, plain_download);
  Matrix sys(f, 2, 2);
  sys.set(0, 0, u1[0]);
  sys.set(0, 1, u1[1]);
  sys.set(1, 0, u2[0]);
  sys.set(1, 1, u2[1]);
  const auto x = sys.solve(std::vector<uint64_t>{r1, r2});
  return {x[0], x[1]};
}

}  // namespace

Scalar42Code build_42() {
  Field f(5);
  CodeParams p;
  p.n = 4;
  p.k = 2;
  p.d = 3;
  p.m = 1;
  p.q = 5;
  p.seed = 0;
  std::vector<DiagonalMatrix> mats{
      DiagonalMatrix(f, {1, 2}),  // G(1,1) = A1
      DiagonalMatrix(f, {1, 1}),  // G(1,2) = B1
      DiagonalMatrix(f, {2, 1}),  // G(2,1) = A2
      DiagonalMatrix(f, {1, 1}),  // G(2,2) = B2
  };
  auto inst = std::make_shared<CodeInstance>(
      p, mats, CodeInstance::Kind::scalar_baseline, 0);
  return Scalar42Code{f,
                      mats[0],
                      mats[1],
                      mats[2],
                      mats[3],
                      {1, 1},
                      std::move(inst)};
}

Scalar42Repair repair_42(const Scalar42Code& code, uint32_t failed,
                         const BlockMap& blocks) {
  if (failed < 1 || failed > 4)
    fail(Errc::unknown_node, "node id must be 1..4");
  const Field& f = code.gf5;
  std::array<std::vector<uint64_t>, 5> content;  // 1-based
  for (uint32_t id = 1; id <= 4; ++id) {
    if (id == failed) continue;
    const auto it = blocks.find(id);
    if (it == blocks.end())
      fail(Errc::wrong_helper_shape,
           "survivor content missing for node " + std::to_string(id));
    if (it->second.size() != 2)
      fail(Errc::length_mismatch, "scalar blocks hold 2 symbols");
    content[id] = it->second;
  }

  const std::vector<uint64_t> v{code.projection[0], code.projection[1]};
  Scalar42Repair out;
  out.failed = failed;

  // projection vector per survivor
  std::array<std::vector<uint64_t>, 5> proj;
  const PrimedPair pr = primed_matrices(code);
  switch (failed) {
    case 1:
      proj[2] = v;
      proj[3] = code.B1.inverse().apply(v);
      proj[4] = code.B2.inverse().apply(v);
      break;
    case 2:
      proj[1] = v;
      proj[3] = code.A1.inverse().apply(v);
      proj[4] = code.A2.inverse().apply(v);
      break;
    case 3:
      proj[4] = v;
      proj[1] = pr.B1p.inverse().apply(v);
      proj[2] = pr.B2p.inverse().apply(v);
      break;
    case 4:
      proj[3] = v;
      proj[1] = pr.A1p.inverse().apply(v);
      proj[2] = pr.A2p.inverse().apply(v);
      break;
  }
  std::array<uint64_t, 5> dl{};
  for (uint32_t id = 1; id <= 4; ++id) {
    if (id == failed) continue;
    dl[id] = project(f, content[id], proj[id]);
    out.downloads.emplace_back(id, dl[id]);
  }

  switch (failed) {
    case 1:
      out.restored = aligned_pair_repair(f, code.projection, code.A1, code.B1,
                                         code.A2, code.B2, dl[2], dl[3], dl[4]);
      break;
    case 2:
      out.restored = aligned_pair_repair(f, code.projection, code.B1, code.A1,
                                         code.B2, code.A2, dl[1], dl[3], dl[4]);
      break;
    case 3:
      out.restored = aligned_pair_repair(f, code.projection, pr.A1p, pr.B1p,
                                         pr.A2p, pr.B2p, dl[4], dl[1], dl[2]);
      break;
    case 4:
      out.restored = aligned_pair_repair(f, code.projection, pr.B1p, pr.A1p,
                                         pr.B2p, pr.A2p, dl[3], dl[1], dl[2]);
      break;
  }
  return out;
}

Scalar42RankCheck scalar42_rank_conditions(const Scalar42Code& code) {
  const Field& f = code.gf5;
  const std::vector<uint64_t> v{code.projection[0], code.projection[1]};
  const PrimedPair pr = primed_matrices(code);
  Scalar42RankCheck out;
  out.node1 = rank2(f, code.A1.apply(code.B1.inverse().apply(v)),
                    code.A2.apply(code.B2.inverse().apply(v)));
  out.node2 = rank2(f, code.B1.apply(code.A1.inverse().apply(v)),
                    code.B2.apply(code.A2.inverse().apply(v)));
  out.node3 = rank2(f, pr.A1p.apply(pr.B1p.inverse().apply(v)),
                    pr.A2p.apply(pr.B2p.inverse().apply(v)));
  out.node4 = rank2(f, pr.B1p.apply(pr.A1p.inverse().apply(v)),
                    pr.B2p.apply(pr.A2p.inverse().apply(v)));
  return out;
}

}  // namespace msr
