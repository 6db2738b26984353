#pragma once
// Widenings that bridge the three branching disciplines, and gadget
// constructions whose optimal tree sizes obey exact closed-form laws.

#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "optsearch/cnf.hpp"
#include "optsearch/combine.hpp"
#include "optsearch/tree.hpp"

namespace optsearch {

// ---------------------------------------------------------------------------
// Twin-variable widening.  Each original variable x gets a fresh partner y
// tied to it by the pair clauses {x ∨ ¬y, ¬x ∨ y}; every literal over x is
// widened by the same-polarity partner literal.  Unit propagation keeps the
// twins synchronized, so branch trees transfer one-to-one between the image
// (searched with closure) and the original (searched without).
// ---------------------------------------------------------------------------

struct TwinWidening {
  Formula formula;
  std::map<VarId, VarId> twin; // original variable -> fresh partner
};

namespace detail {
inline Clause widen_clause(const Clause& c, const std::map<VarId, VarId>& twin) {
  std::vector<Literal> lits;
  lits.reserve(2 * c.size());
  for (Literal l : c) {
    lits.push_back(l);
    auto it = twin.find(l.var());
    if (it != twin.end())
      lits.push_back(l.positive() ? pos(it->second) : neg(it->second));
  }
  return Clause(std::move(lits));
}

inline void append_pair_clauses(std::vector<Clause>& out,
                                const std::map<VarId, VarId>& twin) {
  for (const auto& [x, y] : twin) {
    out.push_back(Clause({pos(x), neg(y)}));
    out.push_back(Clause({neg(x), pos(y)}));
  }
}
} // namespace detail

// Pairs plus the widened clause set.  Optimal size with unit+monotone
// closure equals the original's optimal size with no closure at all.
inline TwinWidening to_dpll_equivalent(const Formula& f, FreshAllocator& alloc) {
  alloc.reserve(f);
  std::map<VarId, VarId> twin;
  for (VarId x : f.variables()) twin.emplace(x, alloc.fresh());
  std::vector<Clause> out;
  out.reserve(f.size() + 2 * twin.size());
  detail::append_pair_clauses(out, twin);
  for (const Clause& c : f) out.push_back(detail::widen_clause(c, twin));
  return {Formula(std::move(out)), std::move(twin)};
}

namespace detail {
inline SearchTree relabel_back(const SearchTree& t,
                               const std::map<VarId, VarId>& back,
                               const std::set<VarId>& originals) {
  if (t.empty()) return t;
  VarId v = t.root_var();
  if (auto it = back.find(v); it != back.end()) {
    v = it->second;
  } else if (!originals.count(v)) {
    throw std::invalid_argument("tree node x" + std::to_string(v) +
                                " belongs to neither alphabet");
  }
  // The pair clauses tie partners with equal polarity, so the partner's
  // false branch is the original's false branch: subtree order is kept.
  return SearchTree(v, relabel_back(t.left(), back, originals),
                    relabel_back(t.right(), back, originals));
}
} // namespace detail

// Relabel partner-variable nodes back to their originals.  `twin` is the
// map produced by the widening (original -> partner).
inline SearchTree lemma1_tree_back(const SearchTree& t,
                                   const std::map<VarId, VarId>& twin) {
  std::map<VarId, VarId> back;
  std::set<VarId> originals;
  for (const auto& [x, y] : twin) {
    back.emplace(y, x);
    originals.insert(x);
  }
  return detail::relabel_back(t, back, originals);
}

// ---------------------------------------------------------------------------
// Monotone shield: pair clauses only, original clauses untouched.  Every
// variable then occurs in both polarities forever, so the monotone-literal
// rule can never fire; optimal size with full closure equals the original's
// optimal size with unit closure only.
// ---------------------------------------------------------------------------

struct MonoShield {
  Formula formula;
  std::map<VarId, VarId> twin;
};

inline MonoShield mono_shield(const Formula& f, FreshAllocator& alloc) {
  alloc.reserve(f);
  std::map<VarId, VarId> twin;
  for (VarId x : f.variables()) twin.emplace(x, alloc.fresh());
  std::vector<Clause> out(f.begin(), f.end());
  out.reserve(out.size() + 2 * twin.size());
  detail::append_pair_clauses(out, twin);
  return {Formula(std::move(out)), std::move(twin)};
}

// ---------------------------------------------------------------------------
// Selector gadget.  Given F and a branch set X = {x_1..x_n}, build
//   { γ ∨ ¬a ∨ ¬b               for each clause γ of F }
//   { ¬x_i ∨ v_i,  x_i ∨ v_i    for each x_i }
//   { ¬v_1 ∨ … ∨ ¬v_n ∨ a }
//   { ¬v_1 ∨ … ∨ ¬v_n ∨ b }
// with v_1..v_n, a, b fresh (allocated in that order).  Restricted to
// branching on the original variables, any tree must first decide all of X
// (cost 2^n − 1); unit closure then fixes v_i, a, b and restores F|X', so
// the optimal size is 2^n − 1 + Σ_{X'} s(F|X').
// ---------------------------------------------------------------------------

struct SelectorGadget {
  Formula formula;
  std::vector<VarId> x_vars; // branch set X, ascending
  std::vector<VarId> v_vars; // aligned with x_vars
  VarId a = 0, b = 0;
  std::vector<VarId> branch_vars; // X plus the remaining original variables
};

namespace detail {
inline SelectorGadget selector_gadget(const Formula& f, std::vector<VarId> xs,
                                      FreshAllocator& alloc) {
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  alloc.reserve(f);
  for (VarId x : xs) alloc.reserve_id(x);
  std::vector<VarId> vs;
  vs.reserve(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) vs.push_back(alloc.fresh());
  const VarId a = alloc.fresh();
  const VarId b = alloc.fresh();

  std::vector<Clause> out;
  out.reserve(f.size() + 2 * xs.size() + 2);
  for (const Clause& g : f) out.push_back(disjoin(disjoin(g, neg(a)), neg(b)));
  for (std::size_t i = 0; i < xs.size(); ++i) {
    out.push_back(Clause({neg(xs[i]), pos(vs[i])}));
    out.push_back(Clause({pos(xs[i]), pos(vs[i])}));
  }
  std::vector<Literal> wide;
  wide.reserve(vs.size() + 1);
  for (VarId v : vs) wide.push_back(neg(v));
  wide.push_back(pos(a));
  out.push_back(Clause(wide));
  wide.back() = pos(b);
  out.push_back(Clause(std::move(wide)));

  std::vector<VarId> branch = f.variables();
  branch.insert(branch.end(), xs.begin(), xs.end());
  std::sort(branch.begin(), branch.end());
  branch.erase(std::unique(branch.begin(), branch.end()), branch.end());
  return {Formula(std::move(out)), std::move(xs), std::move(vs),
          a,
          b,
          std::move(branch)};
}
} // namespace detail

// Public form: X must name variables of F.
inline SelectorGadget c_transform(const Formula& f, const std::vector<VarId>& xs,
                                  FreshAllocator& alloc) {
  for (VarId x : xs)
    if (!f.mentions(x))
      throw std::invalid_argument("c_transform: x" + std::to_string(x) +
                                  " is not a variable of the formula");
  return detail::selector_gadget(f, xs, alloc);
}

// ---------------------------------------------------------------------------
// Model-counting gadget.  For G over a declared variable set X (|X| = n),
// adjoin a fresh y plus a fresh 4-clause complete block over p, q, and wrap
// with the selector gadget on X ∪ {y}.  Branching restricted to X∪{y,p,q},
// the optimal size is exactly 2^{n+1} − 1 + 2·|models of G over X|: each of
// the 2^{n+1} selector leaves costs 0 when the X-part falsifies G, and 1
// (one branch inside the complete block) when it satisfies G.
// ---------------------------------------------------------------------------

struct CountingGadget {
  Formula formula;
  std::vector<VarId> x_vars; // declared set X, ascending
  VarId y = 0, p = 0, q = 0;
  std::vector<VarId> v_vars;
  VarId a = 0, b = 0;
  std::vector<VarId> branch_vars; // X ∪ {y, p, q}
};

inline CountingGadget e_transform(const Formula& g, const std::vector<VarId>& xs_in,
                                  FreshAllocator& alloc) {
  std::vector<VarId> xs(xs_in);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  for (VarId v : g.variables())
    if (!std::binary_search(xs.begin(), xs.end(), v))
      throw std::invalid_argument(
          "e_transform: formula variable x" + std::to_string(v) +
          " is outside the declared variable set");
  alloc.reserve(g);
  for (VarId x : xs) alloc.reserve_id(x);
  const VarId y = alloc.fresh();
  const VarId p = alloc.fresh();
  const VarId q = alloc.fresh();
  const Formula block({Clause({pos(p), pos(q)}), Clause({pos(p), neg(q)}),
                       Clause({neg(p), pos(q)}), Clause({neg(p), neg(q)})});
  Formula inner = union_disjoint(g, block);
  std::vector<VarId> xc(xs);
  xc.push_back(y);
  SelectorGadget c = detail::selector_gadget(inner, std::move(xc), alloc);
  return {std::move(c.formula), std::move(xs), y, p, q, std::move(c.v_vars),
          c.a, c.b, std::move(c.branch_vars)};
}

// Declared set defaults to the variables actually present.
inline CountingGadget e_transform(const Formula& g, FreshAllocator& alloc) {
  return e_transform(g, g.variables(), alloc);
}

// ---------------------------------------------------------------------------
// Forced-complete-tree formula: the selector gadget over n fresh unit
// clauses plus a contradictory fresh pair {y}, {¬y}.  Every selector leaf
// closes at cost 0, so the optimal restricted size is exactly 2^n − 1.
// ---------------------------------------------------------------------------

struct CompleteTreeFormula {
  Formula formula;
  std::vector<VarId> x_vars;
  VarId y = 0;
  std::vector<VarId> v_vars;
  VarId a = 0, b = 0;
  std::vector<VarId> branch_vars; // X ∪ {y}
};

inline CompleteTreeFormula v_formula(std::uint64_t n, FreshAllocator& alloc) {
  if (n < 1) throw std::invalid_argument("v_formula: n must be at least 1");
  std::vector<VarId> xs;
  xs.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) xs.push_back(alloc.fresh());
  const VarId y = alloc.fresh();
  std::vector<Clause> units;
  units.reserve(n + 2);
  for (VarId x : xs) units.push_back(Clause({pos(x)}));
  units.push_back(Clause({pos(y)}));
  units.push_back(Clause({neg(y)}));
  SelectorGadget c = detail::selector_gadget(Formula(std::move(units)), xs, alloc);
  return {std::move(c.formula), std::move(xs), y, std::move(c.v_vars),
          c.a, c.b, std::move(c.branch_vars)};
}

// ---------------------------------------------------------------------------
// Size-increment sums and exact-size chains.
// ---------------------------------------------------------------------------

struct CSumResult {
  Formula formula;
  VarId connective;
};

// Sum guarded by a selector on the connective, so the connective must be
// decided first even under unit closure: c_{{x}}((F ∨ x) ∪ (H ∨ ¬x)).
inline CSumResult c_sum(const Formula& f, const Formula& h, FreshAllocator& alloc) {
  SumResult s = sum(f, h, alloc);
  SelectorGadget c = detail::selector_gadget(s.formula, {s.connective}, alloc);
  return {std::move(c.formula), s.connective};
}

struct ExactSizeBlock {
  Formula formula;
  std::vector<VarId> branch_vars; // chain variables, in construction order
};

// A formula whose optimal tree size under `kind` is exactly m, built as a
// chain of m sums each adding exactly one node.  Plain branching chains
// plain sums from {⊥}; unit-closure branching chains selector-guarded sums
// from the zero-size block {z, ¬z}.
inline ExactSizeBlock exact_size_block(std::uint64_t m, const TreeDiscipline& d,
                                       FreshAllocator& alloc) {
  const Formula bottom(std::vector<Clause>{Clause()});
  switch (d.kind) {
    case DisciplineKind::Backtracking: {
      Formula cur = bottom;
      std::vector<VarId> branch;
      branch.reserve(m);
      for (std::uint64_t i = 0; i < m; ++i) {
        SumResult s = sum(cur, bottom, alloc);
        cur = std::move(s.formula);
        branch.push_back(s.connective);
      }
      return {std::move(cur), std::move(branch)};
    }
    case DisciplineKind::DpllMono: {
      const VarId z = alloc.fresh();
      Formula cur({Clause({pos(z)}), Clause({neg(z)})});
      std::vector<VarId> branch{z};
      branch.reserve(m + 1);
      for (std::uint64_t i = 0; i < m; ++i) {
        CSumResult s = c_sum(cur, bottom, alloc);
        cur = std::move(s.formula);
        branch.push_back(s.connective);
      }
      return {std::move(cur), std::move(branch)};
    }
    default:
      throw std::invalid_argument(
          "exact-size chains are defined for the no-closure and "
          "unit-closure-only disciplines");
  }
}

inline Formula exact_size_formula(std::uint64_t m, const TreeDiscipline& d,
                                  FreshAllocator& alloc) {
  return exact_size_block(m, d, alloc).formula;
}

} // namespace optsearch
