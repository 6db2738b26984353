#pragma once
// Decision-problem reductions: each builder emits a formula together with
// either a distinguished branching variable or a size bound, plus a textual
// statement of the decision equivalence and the variable roles needed to
// reproduce the check.

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "optsearch/cnf.hpp"
#include "optsearch/combine.hpp"
#include "optsearch/oracle.hpp"
#include "optsearch/transforms.hpp"
#include "optsearch/tree.hpp"

namespace optsearch {

struct ReductionOutput {
  Formula formula;
  std::optional<VarId> distinguished; // branching-variable-form reductions
  std::optional<BigNat> bound;        // size-bound-form reductions
  std::string expected_semantics;
  // the discipline (including any branching restriction) the semantics hold under
  TreeDiscipline discipline = TreeDiscipline::backtracking();
  std::map<std::string, std::vector<VarId>> roles;
};

namespace detail {
inline std::vector<VarId> merge_vars(std::vector<VarId> a,
                                     const std::vector<VarId>& b) {
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  return a;
}
} // namespace detail

// ---------------------------------------------------------------------------
// Parity of the first unsatisfiable entry.
//
// Given F_1..F_r (r even, disjoint alphabets, the last two unsatisfiable),
// build F = G ∪ D with
//   G = ⊥ +_x (F_1 ∪ (H + (H + (F_3 ∪ ...))))    over the odd entries,
//   D = H + (F_2 ∪ (H + (H + (F_4 ∪ ...))))      over the even entries,
// where every H slot is a private fresh plain-branching chain block of size
// h exceeding every finite component size.  Then
//   s(G) = 1 + ((i−1)/2)(2h+2) + s(F_i)   (i = first unsatisfiable odd index)
//   s(D) = h + 1 + ((j−2)/2)(2h+2) + s(F_j) (j = first unsatisfiable even one)
// so x (the outer sum connective) is an optimal branching variable iff the
// first unsatisfiable entry overall has odd index.
// ---------------------------------------------------------------------------

struct ParityReduction {
  ReductionOutput output;
  Formula g_part, d_part; // the two halves before any widening
  std::uint64_t hard_size = 0;
  // oracle sizes of the inputs under plain branching; empty = satisfiable
  std::vector<std::optional<std::uint64_t>> input_sizes;
};

inline ParityReduction reduce_parity_sat_parts(const std::vector<Formula>& seq,
                                               const TreeDiscipline& kind,
                                               FreshAllocator& alloc,
                                               std::uint64_t hard_size = 0) {
  const std::size_t r = seq.size();
  if (r < 2 || r % 2 != 0)
    throw std::invalid_argument(
        "parity reduction: need an even number of formulas, at least two");
  if (kind.kind != DisciplineKind::Backtracking &&
      kind.kind != DisciplineKind::Dpll)
    throw std::invalid_argument(
        "parity reduction: defined for the no-closure and full-closure "
        "disciplines");
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = i + 1; j < r; ++j)
      detail::require_disjoint(seq[i], seq[j], "parity reduction");
  for (const Formula& f : seq) alloc.reserve(f);

  const OracleConfig cfg = OracleConfig::with(TreeDiscipline::backtracking());
  std::vector<std::optional<std::uint64_t>> sizes(r);
  std::uint64_t maxs = 0;
  for (std::size_t i = 0; i < r; ++i) {
    ProofSize s = optimal_size(seq[i], cfg);
    if (s.is_finite()) {
      sizes[i] = s.value();
      maxs = std::max(maxs, s.value());
    }
  }
  if (!sizes[r - 2] || !sizes[r - 1])
    throw std::invalid_argument(
        "parity reduction: the final two formulas must be unsatisfiable");
  const std::uint64_t h = hard_size == 0 ? maxs + 1 : hard_size;
  if (h <= maxs)
    throw std::invalid_argument(
        "parity reduction: hard-block size must exceed every component size");

  const TreeDiscipline bt = TreeDiscipline::backtracking();
  auto hard = [&] { return exact_size_formula(h, bt, alloc); };
  // fold F_first ∪ (H + (H + (F_{first+2} ∪ ...))) from the deepest entry out
  auto chain = [&](std::size_t first) {
    std::vector<std::size_t> idx;
    for (std::size_t i = first; i < r; i += 2) idx.push_back(i);
    Formula acc = seq[idx.back()];
    for (std::size_t k = idx.size() - 1; k-- > 0;) {
      SumResult inner = sum(hard(), acc, alloc);
      SumResult outer = sum(hard(), inner.formula, alloc);
      acc = union_disjoint(seq[idx[k]], outer.formula);
    }
    return acc;
  };

  ParityReduction out;
  out.hard_size = h;
  out.input_sizes = std::move(sizes);

  SumResult g = sum(Formula(std::vector<Clause>{Clause()}), chain(0), alloc);
  out.g_part = std::move(g.formula);
  const VarId x = g.connective;
  SumResult d = sum(hard(), chain(1), alloc);
  out.d_part = std::move(d.formula);

  Formula whole = union_disjoint(out.g_part, out.d_part);
  if (kind.kind == DisciplineKind::Dpll) {
    TwinWidening w = to_dpll_equivalent(whole, alloc);
    whole = std::move(w.formula);
  }

  out.output.formula = std::move(whole);
  out.output.distinguished = x;
  out.output.discipline = kind.kind == DisciplineKind::Dpll
                              ? TreeDiscipline::dpll()
                              : TreeDiscipline::backtracking();
  out.output.expected_semantics =
      "the distinguished variable is an optimal branching variable iff the "
      "first unsatisfiable sequence entry has odd (1-based) index";
  out.output.roles["distinguished"] = {x};
  return out;
}

inline ReductionOutput reduce_parity_sat(const std::vector<Formula>& seq,
                                         const TreeDiscipline& kind,
                                         FreshAllocator& alloc,
                                         std::uint64_t hard_size = 0) {
  return reduce_parity_sat_parts(seq, kind, alloc, hard_size).output;
}

// ---------------------------------------------------------------------------
// Unsatisfiability as a size-bound question.
//
// F = G ∪ H with H a chain block of size 2^{n+1}, n = |Var(G)|, bound
// k = 2^n.  Any unsatisfiable G is refutable within 2^n − 1 < k nodes, while
// a satisfiable G forces the tree to refute H at cost 2^{n+1} > k, so a tree
// of size ≤ k exists iff G is unsatisfiable.
// ---------------------------------------------------------------------------

inline ReductionOutput reduce_ots_conp(const Formula& g,
                                       const TreeDiscipline& kind,
                                       FreshAllocator& alloc) {
  if (kind.kind == DisciplineKind::Dpll)
    throw std::invalid_argument(
        "size-bound reduction: defined for the no-closure and "
        "unit-closure-only disciplines");
  alloc.reserve(g);
  const std::size_t n = g.variables().size();
  if (n > 12)
    throw std::invalid_argument(
        "size-bound reduction: embedded formula too large for a desk-scale "
        "chain block");
  ExactSizeBlock h =
      exact_size_block(std::uint64_t{1} << (n + 1), kind, alloc);

  ReductionOutput out;
  out.formula = union_disjoint(g, h.formula);
  out.bound = BigNat(1) << n;
  out.discipline =
      kind.kind == DisciplineKind::Backtracking
          ? TreeDiscipline::backtracking()
          : TreeDiscipline::dpll_mono().restricted_to(
                detail::merge_vars(g.variables(), h.branch_vars));
  out.expected_semantics =
      "a tree of size at most the bound exists iff the embedded formula is "
      "unsatisfiable";
  out.roles["embedded"] = g.variables();
  out.roles["ladder"] = h.branch_vars;
  return out;
}

// ---------------------------------------------------------------------------
// Size bound as a branching-variable question (unit-closure discipline).
//
// F = (⊥ +_a G) ∪ I_{k+1} with the selector-guarded sum and a chain block of
// size k+1.  Branching a costs 1 + s(G); the union's size is
// min(1 + s(G), k + 1), so a is an optimal branching variable iff s(G) ≤ k.
// ---------------------------------------------------------------------------

inline ReductionOutput reduce_ots_to_obv(const Formula& g, std::uint64_t k,
                                         FreshAllocator& alloc) {
  alloc.reserve(g);
  const TreeDiscipline mono = TreeDiscipline::dpll_mono();
  CSumResult s = c_sum(Formula(std::vector<Clause>{Clause()}), g, alloc);
  ExactSizeBlock ladder = exact_size_block(k + 1, mono, alloc);

  ReductionOutput out;
  out.formula = union_disjoint(s.formula, ladder.formula);
  out.distinguished = s.connective;
  std::vector<VarId> allowed = detail::merge_vars(
      detail::merge_vars(g.variables(), ladder.branch_vars), {s.connective});
  out.discipline = mono.restricted_to(std::move(allowed));
  out.expected_semantics =
      "the distinguished variable is an optimal branching variable iff the "
      "embedded formula has a tree of size at most " +
      std::to_string(k);
  out.roles["distinguished"] = {s.connective};
  out.roles["embedded"] = g.variables();
  out.roles["ladder"] = ladder.branch_vars;
  return out;
}

// ---------------------------------------------------------------------------
// Existence of an X-assignment killing half the Y-models, as a size bound.
//
// E = c_X(c_Y(F ∪ I_1) ∪ I_c) with cap c = 2^n + 2^{n−1}.  Under branching
// restricted to X ∪ Y ∪ chain variables,
//   s(E) = 2^n − 1 + Σ_{X'} min(2^n − 1 + M(X'), c)
// where M(X') counts the Y-models of F|X'.  A term stays below the cap
// exactly when M(X') ≤ 2^{n−1}, so with bound 2^n + 2^n·c − 2 the bound is
// met iff some X' leaves at most half of the Y-assignments as models.
// ---------------------------------------------------------------------------

inline ReductionOutput reduce_eminsat(const Formula& f,
                                      const std::vector<VarId>& xs_in,
                                      const std::vector<VarId>& ys_in,
                                      FreshAllocator& alloc) {
  std::vector<VarId> xs(xs_in), ys(ys_in);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  std::sort(ys.begin(), ys.end());
  ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
  const std::size_t n = xs.size();
  if (n == 0 || ys.size() != n)
    throw std::invalid_argument(
        "model-count reduction: need equal-size nonempty variable splits");
  for (VarId v : ys)
    if (std::binary_search(xs.begin(), xs.end(), v))
      throw std::invalid_argument("model-count reduction: X and Y overlap");
  for (VarId v : f.variables())
    if (!std::binary_search(xs.begin(), xs.end(), v) &&
        !std::binary_search(ys.begin(), ys.end(), v))
      throw std::invalid_argument(
          "model-count reduction: formula variable outside X ∪ Y");
  if (n > 20)
    throw std::invalid_argument("model-count reduction: split too large");

  alloc.reserve(f);
  for (VarId v : xs) alloc.reserve_id(v);
  for (VarId v : ys) alloc.reserve_id(v);

  const TreeDiscipline mono = TreeDiscipline::dpll_mono();
  ExactSizeBlock one = exact_size_block(1, mono, alloc);
  SelectorGadget cy =
      detail::selector_gadget(union_disjoint(f, one.formula), ys, alloc);
  const std::uint64_t cap =
      (std::uint64_t{1} << n) + (std::uint64_t{1} << (n - 1));
  ExactSizeBlock capchain = exact_size_block(cap, mono, alloc);
  SelectorGadget cx = detail::selector_gadget(
      union_disjoint(cy.formula, capchain.formula), xs, alloc);

  ReductionOutput out;
  out.formula = std::move(cx.formula);
  out.bound = (BigNat(1) << n) + (BigNat(1) << n) * cap - 2;
  std::vector<VarId> allowed = detail::merge_vars(
      detail::merge_vars(xs, ys),
      detail::merge_vars(one.branch_vars, capchain.branch_vars));
  out.discipline = mono.restricted_to(std::move(allowed));
  out.expected_semantics =
      "a tree within the bound exists iff some assignment of the X "
      "variables leaves at most half of the Y-assignments as models";
  out.roles["X"] = std::move(xs);
  out.roles["Y"] = std::move(ys);
  out.roles["ladder_one"] = one.branch_vars;
  out.roles["ladder_cap"] = capchain.branch_vars;
  return out;
}

} // namespace optsearch
