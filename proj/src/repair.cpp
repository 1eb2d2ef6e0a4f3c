#include "msr/repair.hpp"

#include <algorithm>

namespace msr {

namespace {

// Basis slots and rebased rows shared by repair plans, verification and the
// public rebase().
struct BasisSplit {
  std::vector<uint32_t> basis;        // sorted
  size_t failed_slot = 0;
  std::vector<uint32_t> sys_like;     // helpers inside the basis, ascending
  std::vector<uint32_t> parity_like;  // helpers outside the basis, ascending
};

void check_node_id(const CodeInstance& code, uint32_t id) {
  if (id < 1 || id > code.params().n)
    fail(Errc::bad_argument, "node id out of range");
}

std::vector<uint32_t> checked_helpers(const CodeInstance& code, uint32_t failed,
                                      std::vector<uint32_t> helpers) {
  check_node_id(code, failed);
  if (helpers.size() != code.params().d)
    fail(Errc::wrong_helper_shape, "need exactly d helpers");
  std::sort(helpers.begin(), helpers.end());
  for (size_t i = 0; i < helpers.size(); ++i) {
    check_node_id(code, helpers[i]);
    if (i > 0 && helpers[i] == helpers[i - 1])
      fail(Errc::wrong_helper_shape, "duplicate helper id");
    if (helpers[i] == failed)
      fail(Errc::wrong_helper_shape, "failed node cannot help");
  }
  return helpers;
}

BasisSplit split_basis(const CodeInstance& code, uint32_t failed,
                       const std::vector<uint32_t>& helpers_sorted) {
  const uint32_t k = code.params().k;
  // prefer systematic ids ascending, then parity ids ascending
  std::vector<uint32_t> preferred;
  for (uint32_t h : helpers_sorted)
    if (h <= k) preferred.push_back(h);
  for (uint32_t h : helpers_sorted)
    if (h > k) preferred.push_back(h);
  BasisSplit bs;
  bs.sys_like.assign(preferred.begin(), preferred.begin() + (k - 1));
  bs.parity_like.assign(preferred.begin() + (k - 1), preferred.end());
  std::sort(bs.sys_like.begin(), bs.sys_like.end());
  std::sort(bs.parity_like.begin(), bs.parity_like.end());
  bs.basis = bs.sys_like;
  bs.basis.push_back(failed);
  std::sort(bs.basis.begin(), bs.basis.end());
  bs.failed_slot = static_cast<size_t>(
      std::find(bs.basis.begin(), bs.basis.end(), failed) - bs.basis.begin());
  return bs;
}

// Per-position inverses of the basis composite; [t](l,j) carries unit l from
// basis slot j at subsymbol position t.
std::vector<Matrix> basis_inverse_positions(const CodeInstance& code,
                                            const std::vector<uint32_t>& basis) {
  const uint32_t k = code.params().k;
  if (basis.size() != k) fail(Errc::singular_basis, "basis size must be k");
  for (size_t i = 1; i < basis.size(); ++i)
    if (basis[i] == basis[i - 1])
      fail(Errc::singular_basis, "duplicate node id in basis");
  try {
    return subset_decode_matrices(code, basis);
  } catch (const Error& e) {
    if (e.code() == Errc::singular)
      fail(Errc::singular_basis, "basis composite matrix is singular");
    throw;
  }
}

// Primed diagonal rows D'(g, slot) for the given non-basis nodes:
// content_g = sum_slot D'(g, slot) * u'_slot.
std::map<uint32_t, std::vector<DiagonalMatrix>> rebased_rows(
    const CodeInstance& code, const std::vector<uint32_t>& basis,
    const std::vector<uint32_t>& nodes) {
  const auto inv = basis_inverse_positions(code, basis);
  const uint32_t k = code.params().k;
  const size_t alpha = code.derived().alpha_sub;
  const Field& f = code.field();
  std::map<uint32_t, std::vector<DiagonalMatrix>> out;
  for (uint32_t g : nodes) {
    std::vector<DiagonalMatrix> row;
    row.reserve(k);
    for (uint32_t j = 0; j < k; ++j) {
      std::vector<uint64_t> diag(alpha);
      for (size_t t = 0; t < alpha; ++t) {
        uint64_t acc = 0;
        for (uint32_t l = 1; l <= k; ++l)
          acc = f.add(acc, f.mul(code.encoding_entry(g, l, t),
                                 inv[t].at(l - 1, j)));
        diag[t] = acc;
      }
      row.emplace_back(f, std::move(diag));
    }
    out.emplace(g, std::move(row));
  }
  return out;
}

// Generators in (parity-like helper, interference slot) lexicographic order,
// plus the desired diagonal per parity-like helper.
struct Geometry {
  BasisSplit split;
  std::vector<DiagonalMatrix> desired;
  ProjectionSet proj;
};

Geometry build_geometry(const CodeInstance& code, uint32_t failed,
                        const std::vector<uint32_t>& helpers_sorted) {
  Geometry geo;
  geo.split = split_basis(code, failed, helpers_sorted);
  auto rows = rebased_rows(code, geo.split.basis, geo.split.parity_like);
  const uint32_t k = code.params().k;
  std::vector<DiagonalMatrix> gens;
  for (uint32_t g : geo.split.parity_like) {
    const auto& row = rows.at(g);
    for (uint32_t j = 0; j < k; ++j) {
      if (j == geo.split.failed_slot) continue;
      gens.push_back(row[j]);
    }
    geo.desired.push_back(row[geo.split.failed_slot]);
  }
  geo.proj = ProjectionSet(code.field(), std::move(gens), code.params().m,
                           code.derived().alpha_sub);
  return geo;
}

// Stacked desired system: row (g, c) is (D'(g, failed slot) * v_c)^t.
Matrix desired_equations(const CodeInstance& code, const Geometry& geo) {
  const size_t alpha = code.derived().alpha_sub;
  const uint64_t B = geo.proj.v_columns();
  Matrix eq(code.field(), geo.desired.size() * B, alpha);
  const Field& f = code.field();
  for (size_t g = 0; g < geo.desired.size(); ++g) {
    const auto& diag = geo.desired[g].diag();
    for (uint64_t c = 0; c < B; ++c)
      for (size_t t = 0; t < alpha; ++t)
        eq.set(g * B + c, t, f.mul(diag[t], geo.proj.V().at(t, c)));
  }
  return eq;
}

bool containment_holds(const CodeInstance& code, const Geometry& geo) {
  const Field& f = code.field();
  const auto& proj = geo.proj;
  for (size_t g = 0; g < proj.generators().size(); ++g) {
    const auto& diag = proj.generators()[g].diag();
    for (uint64_t c = 0; c < proj.v_columns(); ++c) {
      const uint64_t target = proj.vbar_index_after(c, g);
      for (size_t t = 0; t < proj.dim(); ++t) {
        if (f.mul(diag[t], proj.V().at(t, c)) != proj.Vbar().at(t, target))
          return false;
      }
    }
  }
  return true;
}

std::vector<uint32_t> canonical_helpers(const CodeInstance& code,
                                        uint32_t node) {
  const auto& p = code.params();
  std::vector<uint32_t> helpers;
  if (node <= p.k) {
    for (uint32_t s = 1; s <= p.k; ++s)
      if (s != node) helpers.push_back(s);
    for (uint32_t i = 1; i <= p.d - p.k + 1; ++i) helpers.push_back(p.k + i);
  } else {
    for (uint32_t s = 1; helpers.size() < p.d; ++s)
      if (s != node) helpers.push_back(s);
  }
  return helpers;
}

}  // namespace

size_t RankReport::passed() const {
  size_t n = 0;
  for (const auto& e : entries) n += e.ok() ? 1 : 0;
  return n;
}

bool RankReport::all_ok() const { return passed() == entries.size(); }

Rational gamma_formula(uint32_t k, uint32_t d, uint32_t m) {
  if (k < 1 || d < k || m < 1)
    fail(Errc::inadmissible, "gamma_formula needs 1 <= k <= d and m >= 1");
  const uint32_t N = (k - 1) * (d - k + 1);
  const Rational ratio(bigint_pow(BigInt(m) + 1, N), bigint_pow(BigInt(m), N));
  return Rational(k - 1) * ratio + Rational(d - k + 1);
}

RankReport verify_repair_ranks(const CodeInstance& code) {
  RankReport report;
  const auto& p = code.params();
  const size_t alpha = code.derived().alpha_sub;
  for (uint32_t node = 1; node <= p.n; ++node) {
    RankReport::Entry e;
    e.node = node;
    e.systematic = node <= p.k;
    e.required_rank = alpha;
    try {
      const auto helpers = canonical_helpers(code, node);
      const Geometry geo = build_geometry(code, node, helpers);
      e.desired_rank = desired_equations(code, geo).rank();
      e.containment_ok = containment_holds(code, geo);
    } catch (const Error&) {
      e.desired_rank = 0;
      e.containment_ok = false;
    }
    report.entries.push_back(std::move(e));
  }
  return report;
}

RebasedView rebase(const CodeInstance& code, const std::vector<uint32_t>& basis,
                   const BlockMap& blocks) {
  std::vector<uint32_t> sorted = basis;
  std::sort(sorted.begin(), sorted.end());
  for (uint32_t id : sorted) check_node_id(code, id);
  // basis_inverse_positions rejects duplicates and singular composites
  std::vector<uint32_t> others;
  for (uint32_t id = 1; id <= code.params().n; ++id)
    if (!std::binary_search(sorted.begin(), sorted.end(), id))
      others.push_back(id);
  auto rows = rebased_rows(code, sorted, others);

  RebasedView view;
  view.basis = sorted;
  view.transform = composite_matrix(code, sorted);
  view.transform_inverse = view.transform.inverse();
  for (uint32_t g : others) {
    auto& row = rows.at(g);
    for (uint32_t j = 0; j < code.params().k; ++j)
      view.primed.emplace(std::make_pair(g, j + 1), row[j]);
  }
  for (uint32_t id : sorted) {
    const auto it = blocks.find(id);
    if (it == blocks.end())
      fail(Errc::bad_argument, "missing basis node content");
    if (it->second.size() != code.derived().alpha_sub)
      fail(Errc::length_mismatch, "basis block length must be alpha_sub");
    view.basis_units.push_back(it->second);
  }
  return view;
}

RepairPlan::RepairPlan(const CodeInstance& code, uint32_t failed,
                       std::vector<uint32_t> helpers)
    : code_(&code), failed_(failed) {
  helpers_ = checked_helpers(code, failed, std::move(helpers));
  Geometry geo = build_geometry(code, failed, helpers_);
  const uint64_t B = geo.proj.v_columns();
  Matrix eq = desired_equations(code, geo);
  try {
    solver_ = eq.inverse();
  } catch (const Error& e) {
    if (e.code() == Errc::singular)
      fail(Errc::rank_deficient,
           "desired repair system is rank deficient (unverified instance?)");
    throw;
  }
  parity_like_ = geo.split.parity_like;
  sys_like_ = geo.split.sys_like;
  failed_slot_ = geo.split.failed_slot;
  for (uint32_t s : sys_like_) {
    const auto it =
        std::find(geo.split.basis.begin(), geo.split.basis.end(), s);
    sys_slot_.push_back(
        static_cast<size_t>(it - geo.split.basis.begin()));
  }
  desired_ = std::move(geo.desired);

  // interference of basis slot j inside parity helper g's column c sits at a
  // fixed Vbar column: generator (g, j) bumps c's exponent by one
  const uint32_t k = code.params().k;
  cancel_.assign(parity_like_.size(),
                 std::vector<std::vector<uint64_t>>(
                     sys_like_.size(), std::vector<uint64_t>(B, 0)));
  for (size_t g = 0; g < parity_like_.size(); ++g) {
    for (size_t s = 0; s < sys_like_.size(); ++s) {
      // generator index of (g, slot sys_slot_[s]) in the flattened order
      size_t offset = 0;
      for (size_t j = 0; j < k; ++j) {
        if (j == failed_slot_) continue;
        if (j == sys_slot_[s]) break;
        ++offset;
      }
      const size_t gen_index = g * (k - 1) + offset;
      for (uint64_t c = 0; c < B; ++c)
        cancel_[g][s][c] = geo.proj.vbar_index_after(c, gen_index);
    }
  }
  proj_ = std::move(geo.proj);
}

uint64_t RepairPlan::subsymbols_from(uint32_t helper) const {
  if (std::find(sys_like_.begin(), sys_like_.end(), helper) != sys_like_.end())
    return proj_.vbar_columns();
  if (std::find(parity_like_.begin(), parity_like_.end(), helper) !=
      parity_like_.end())
    return proj_.v_columns();
  fail(Errc::bad_argument, "node is not a helper of this plan");
}

uint64_t RepairPlan::subsymbols_total() const {
  return sys_like_.size() * proj_.vbar_columns() +
         parity_like_.size() * proj_.v_columns();
}

RepairResult RepairPlan::apply(const BlockMap& blocks) const {
  const size_t alpha = code_->derived().alpha_sub;
  const Field& f = code_->field();
  auto fetch = [&](uint32_t id) -> const std::vector<uint64_t>& {
    const auto it = blocks.find(id);
    if (it == blocks.end())
      fail(Errc::bad_argument, "missing helper content for node " +
                                   std::to_string(id));
    if (it->second.size() != alpha)
      fail(Errc::length_mismatch, "helper block length must be alpha_sub");
    return it->second;
  };

  const uint64_t B = proj_.v_columns();
  const uint64_t Bbar = proj_.vbar_columns();

  // projections transmitted by each helper
  std::vector<std::vector<uint64_t>> parity_dl(parity_like_.size());
  for (size_t g = 0; g < parity_like_.size(); ++g) {
    const auto& block = fetch(parity_like_[g]);
    parity_dl[g].resize(B);
    for (uint64_t c = 0; c < B; ++c) {
      uint64_t acc = 0;
      for (size_t t = 0; t < alpha; ++t)
        acc = f.add(acc, f.mul(block[t], proj_.V().at(t, c)));
      parity_dl[g][c] = acc;
    }
  }
  std::vector<std::vector<uint64_t>> sys_dl(sys_like_.size());
  for (size_t s = 0; s < sys_like_.size(); ++s) {
    const auto& block = fetch(sys_like_[s]);
    sys_dl[s].resize(Bbar);
    for (uint64_t c = 0; c < Bbar; ++c) {
      uint64_t acc = 0;
      for (size_t t = 0; t < alpha; ++t)
        acc = f.add(acc, f.mul(block[t], proj_.Vbar().at(t, c)));
      sys_dl[s][c] = acc;
    }
  }

  // cancel interference by exponent lookup, then solve for the failed unit
  std::vector<uint64_t> rhs(parity_like_.size() * B);
  for (size_t g = 0; g < parity_like_.size(); ++g) {
    for (uint64_t c = 0; c < B; ++c) {
      uint64_t v = parity_dl[g][c];
      for (size_t s = 0; s < sys_like_.size(); ++s)
        v = f.sub(v, sys_dl[s][cancel_[g][s][c]]);
      rhs[g * B + c] = v;
    }
  }
  RepairResult res;
  res.failed = failed_;
  res.helpers = helpers_;
  res.restored = solver_.mul_vec(rhs);
  for (uint32_t h : helpers_) {
    const uint64_t n = subsymbols_from(h);
    res.downloads.emplace_back(h, n);
    res.total_downloaded += n;
  }
  res.gamma_measured = Rational(res.total_downloaded, B);
  return res;
}

RepairResult repair_node(const CodeInstance& code, uint32_t failed,
                         const std::vector<uint32_t>& helpers,
                         const BlockMap& blocks) {
  return RepairPlan(code, failed, helpers).apply(blocks);
}

RepairResult repair_systematic(const CodeInstance& code, uint32_t failed,
                               const std::vector<uint32_t>& helpers,
                               const BlockMap& blocks) {
  const auto& p = code.params();
  if (failed > p.k)
    fail(Errc::wrong_helper_shape, "failed node must be systematic");
  auto sorted = checked_helpers(code, failed, helpers);
  size_t sys = 0, par = 0;
  for (uint32_t h : sorted) (h <= p.k ? sys : par)++;
  if (sys != p.k - 1 || par != p.d - p.k + 1)
    fail(Errc::wrong_helper_shape,
         "need k-1 systematic and d-k+1 parity helpers");
  return repair_node(code, failed, sorted, blocks);
}

}  // namespace msr
