#pragma once
// Minimum regular resolution proofs: iterative-deepening exact search with
// exhaustive enumeration of all minimum-size proofs, the backtracking-tree
// simulation, the unit-guard clause transforms, the push-to-leaves proof
// rewrite, and the optimal-resolution-pair decision with its reduction.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "optsearch/cnf.hpp"
#include "optsearch/combine.hpp"
#include "optsearch/families.hpp"
#include "optsearch/oracle.hpp"
#include "optsearch/reductions.hpp"
#include "optsearch/resolution.hpp"
#include "optsearch/tree.hpp"

namespace optsearch {

struct MinProofResult {
  ProofSize size = ProofSize::infinite();
  std::optional<ResolutionProof> witness;
};

namespace detail {

// If the two clauses clash on exactly one variable, return it.  Zero clashes
// admit no resolvent; two or more make every resolvent tautological, so
// neither case can contribute to a minimum proof.
inline std::optional<VarId> single_clash_var(const Clause& c1,
                                             const Clause& c2) {
  std::optional<VarId> found;
  for (Literal l : c1) {
    if (!c2.contains(l.negated())) continue;
    if (found && *found != l.var()) return std::nullopt;
    found = l.var();
  }
  return found;
}

// Exhaustive search for regular resolution refutations with a given number
// of steps, deepened one step at a time.  Soundness of the pruning rules is
// argued inline; each rule preserves at least one canonical linearization of
// every minimum-size proof, so enumeration at the first successful depth
// still visits every minimum-size proof.
class RegularProofSearch {
public:
  RegularProofSearch(const Formula& f, std::uint64_t budget)
      : formula_(f), budget_(budget) {
    const std::vector<VarId> vars = f.variables();
    if (vars.size() > 64)
      throw std::invalid_argument(
          "regular proof search supports at most 64 variables");
    for (std::size_t b = 0; b < vars.size(); ++b)
      bit_[vars[b]] = std::uint64_t{1} << b;
    for (const Clause& c : f) {
      clauses_.push_back(c);
      masks_.push_back(0);
      refs_.push_back(0);
      taut_.push_back(c.tautological() ? 1 : 0);
    }
    leaf_count_ = clauses_.size();
  }

  // Deepens from one step up to max_steps.  When enumerate is set, every
  // proof at the first successful depth is reported to visit (and counted);
  // otherwise the first proof found becomes the witness.
  std::optional<std::uint64_t> run(
      std::uint64_t max_steps, bool enumerate,
      const std::function<void(const ResolutionProof&)>& visit) {
    enumerate_ = enumerate;
    visit_ = visit;
    for (std::uint64_t k = 1; k <= max_steps; ++k) {
      found_ = 0;
      dfs(k, 0);
      if (found_ > 0) return k;
    }
    return std::nullopt;
  }

  std::uint64_t proofs_found() const { return found_; }
  const std::optional<ResolutionProof>& witness() const { return witness_; }
  std::uint64_t nodes_pushed() const { return pushed_; }

private:
  // Returns true when the caller should unwind (first-found mode only).
  bool dfs(std::uint64_t remaining, std::uint64_t last_key) {
    const std::size_t n = clauses_.size();
    const std::size_t last = n - 1; // most recently added node
    const bool have_step = !steps_.empty();
    for (std::size_t i = 0; i < n; ++i) {
      if (taut_[i]) continue; // tautologies never sit on a root-to-leaf path
      for (std::size_t j = i + 1; j < n; ++j) {
        if (taut_[j]) continue;
        if (remaining == 1 &&
            (clauses_[i].size() != 1 || clauses_[j].size() != 1))
          continue; // the final step must produce ⊥ from complementary units
        const std::optional<VarId> pivot =
            single_clash_var(clauses_[i], clauses_[j]);
        if (!pivot) continue;
        const std::uint64_t bit = bit_.at(*pivot);
        // Regularity: a pivot may not reappear below either parent.  With
        // per-node masks of all pivots used anywhere below, this per-step
        // condition is exactly path-regularity of the assembled DAG.
        if ((masks_[i] | masks_[j]) & bit) continue;
        // Canonical linearization: every proof DAG admits the greedy order
        // that always appends the ready step of smallest key, and in that
        // order each step either consumes the immediately preceding node or
        // carries a larger key (the final ⊥ step always consumes the
        // preceding node, since all non-root steps are consumed and only ⊥
        // comes later).  Enforcing the disjunction therefore keeps at least
        // one ordering of every proof while cutting most permutations.
        const std::uint64_t key = make_key(i, j, bit);
        if (have_step && key <= last_key && i != last && j != last) continue;
        Clause r = resolve(clauses_[i], clauses_[j], *pivot);
        if (remaining == 1) {
          if (!r.empty()) continue;
        } else if (r.empty()) {
          // ⊥ has no literals, so nothing could consume it later; with more
          // than one step left some step would end up unused.
          continue;
        }
        // A minimum proof never derives a tautology: eliminating its
        // tautology variable again anywhere above is barred by regularity,
        // so the tautology would survive to the root — such a node can only
        // be unused, and minimum proofs carry no unused steps.
        if (r.tautological()) continue;
        const std::uint64_t newmask = masks_[i] | masks_[j] | bit;
        // Dominance: if an existing node derives the same clause using a
        // subset of the pivots, any consumer of the new node could be
        // rerouted to it, leaving the new node unused — so no minimum proof
        // contains the pair, and the branch is safe to cut even when
        // enumerating all minimum proofs.
        if (dominated(r, newmask)) continue;
        // Usefulness: every non-root step must eventually be consumed, and
        // one new step lowers the number of unconsumed steps by at most one.
        const int consumed = (i >= leaf_count_ && refs_[i] == 0 ? 1 : 0) +
                             (j >= leaf_count_ && refs_[j] == 0 ? 1 : 0);
        const std::uint64_t unused_after = unused_steps_ - consumed + 1;
        if (unused_after - 1 > remaining - 1) continue;

        if (budget_ != 0 && pushed_ >= budget_) throw BudgetExhausted{};
        ++pushed_;
        push(i, j, *pivot, std::move(r), newmask, consumed);
        bool stop = false;
        if (remaining == 1) {
          ++found_;
          report();
          stop = !enumerate_;
        } else {
          stop = dfs(remaining - 1, key);
        }
        pop(i, j, consumed);
        if (stop) return true;
      }
    }
    return false;
  }

  bool dominated(const Clause& r, std::uint64_t mask) const {
    for (std::size_t m = 0; m < clauses_.size(); ++m)
      if ((masks_[m] & ~mask) == 0 && clauses_[m] == r) return true;
    return false;
  }

  std::uint64_t make_key(std::size_t i, std::size_t j,
                         std::uint64_t bit) const {
    std::uint64_t b = 0;
    while (!(bit & (std::uint64_t{1} << b))) ++b;
    return (std::uint64_t(i) << 40) | (std::uint64_t(j) << 20) | b;
  }

  void push(std::size_t i, std::size_t j, VarId pivot, Clause r,
            std::uint64_t mask, int consumed) {
    ++refs_[i];
    ++refs_[j];
    unused_steps_ += 1 - consumed;
    ResolutionStep s;
    s.pivot = pivot;
    s.left = i;
    s.right = j;
    s.resolvent = r;
    steps_.push_back(std::move(s));
    clauses_.push_back(std::move(r));
    masks_.push_back(mask);
    refs_.push_back(0);
    taut_.push_back(0);
  }

  void pop(std::size_t i, std::size_t j, int consumed) {
    steps_.pop_back();
    clauses_.pop_back();
    masks_.pop_back();
    refs_.pop_back();
    taut_.pop_back();
    unused_steps_ -= 1 - consumed;
    --refs_[i];
    --refs_[j];
  }

  void report() {
    ResolutionProof p(std::vector<Clause>(formula_.begin(), formula_.end()),
                      steps_, clauses_.size() - 1);
    if (visit_) visit_(p);
    if (!enumerate_ && !witness_) witness_ = std::move(p);
  }

  Formula formula_;
  std::uint64_t budget_;
  std::map<VarId, std::uint64_t> bit_;
  std::vector<Clause> clauses_;
  std::vector<std::uint64_t> masks_;
  std::vector<int> refs_;
  std::vector<char> taut_;
  std::vector<ResolutionStep> steps_;
  std::size_t leaf_count_ = 0;
  std::uint64_t unused_steps_ = 0;
  std::uint64_t pushed_ = 0;
  std::uint64_t found_ = 0;
  bool enumerate_ = false;
  std::function<void(const ResolutionProof&)> visit_;
  std::optional<ResolutionProof> witness_;
};

// Every unsatisfiable formula has a regular refutation with fewer than 2^n
// steps (simulate a complete search tree), so deepening can stop there.
inline std::uint64_t deepening_cap(const Formula& f) {
  const std::size_t n = f.variables().size();
  if (n >= 20) return ~std::uint64_t{0};
  return (std::uint64_t{1} << n) - 1;
}

inline ResolutionProof trivial_proof(const Formula& f) {
  std::vector<Clause> leaves(f.begin(), f.end());
  std::size_t root = 0;
  while (root < leaves.size() && !leaves[root].empty()) ++root;
  return ResolutionProof(std::move(leaves), {}, root);
}

} // namespace detail

// Minimum number of resolution steps over all regular refutations; Infinite
// for satisfiable formulas.  A nonzero budget caps the total number of steps
// the search may push across all deepening rounds; exceeding it raises
// BudgetExhausted rather than returning a value.
inline ProofSize min_regular_size(const Formula& f, std::uint64_t budget) {
  if (f.has_empty_clause()) return ProofSize::finite(0);
  if (is_satisfiable(f)) return ProofSize::infinite();
  detail::RegularProofSearch search(f, budget);
  auto k = search.run(detail::deepening_cap(f), false, nullptr);
  return ProofSize::finite(*k);
}

// Same search, but also returns one minimum-size proof.
inline MinProofResult min_regular_proof(const Formula& f,
                                        std::uint64_t budget) {
  MinProofResult out;
  if (f.has_empty_clause()) {
    out.size = ProofSize::finite(0);
    out.witness = detail::trivial_proof(f);
    return out;
  }
  if (is_satisfiable(f)) return out;
  detail::RegularProofSearch search(f, budget);
  auto k = search.run(detail::deepening_cap(f), false, nullptr);
  out.size = ProofSize::finite(*k);
  out.witness = search.witness();
  return out;
}

// Visits every minimum-size regular refutation (a proof may be visited more
// than once if it admits several canonical linearizations) and returns the
// number of visits; zero for satisfiable formulas.
template <typename Visitor>
std::uint64_t enumerate_min_proofs(const Formula& f, std::uint64_t budget,
                                   Visitor&& visit) {
  if (f.has_empty_clause()) {
    visit(detail::trivial_proof(f));
    return 1;
  }
  if (is_satisfiable(f)) return 0;
  detail::RegularProofSearch search(f, budget);
  search.run(detail::deepening_cap(f), true,
             std::function<void(const ResolutionProof&)>(
                 [&](const ResolutionProof& p) { visit(p); }));
  return search.proofs_found();
}

namespace detail {
// True iff some regular refutation uses at most max_steps steps.
inline bool has_regular_proof_within(const Formula& f, std::uint64_t max_steps,
                                     std::uint64_t budget) {
  if (f.has_empty_clause()) return true;
  if (is_satisfiable(f)) return false;
  if (max_steps == 0) return false;
  RegularProofSearch search(f, budget);
  return search.run(max_steps, false, nullptr).has_value();
}
} // namespace detail

// ---------------------------------------------------------------------------
// Simulating a backtracking refutation tree as a regular resolution proof.
// Each internal tree node becomes at most one resolution step, so the proof
// has at most as many steps as the tree has nodes.
// ---------------------------------------------------------------------------

inline ResolutionProof tree_to_resolution(const Formula& f,
                                          const SearchTree& t) {
  if (!validate_tree(f, t, TreeDiscipline::backtracking()))
    throw std::invalid_argument(
        "tree is not a plain backtracking refutation of the formula");
  std::vector<Clause> leaves(f.begin(), f.end());
  std::vector<ResolutionStep> steps;

  // Fetch by index on every use: the steps vector grows during recursion.
  auto clause_at = [&](std::size_t id) -> const Clause& {
    return id < leaves.size() ? leaves[id]
                              : steps[id - leaves.size()].resolvent;
  };
  // Recursively emit, for each subtree, a node whose clause is falsified by
  // the path assignment: a leaf picks an input clause the path falsifies; an
  // inner node resolves its children on the branch variable, or passes a
  // child through when that child's clause does not mention the variable.
  std::function<std::size_t(const SearchTree&, Assignment&)> build =
      [&](const SearchTree& node, Assignment& path) -> std::size_t {
    if (node.empty()) {
      for (std::size_t i = 0; i < leaves.size(); ++i) {
        bool falsified = true;
        for (Literal l : leaves[i])
          if (!path.satisfies(l.negated())) {
            falsified = false;
            break;
          }
        if (falsified) return i;
      }
      throw std::logic_error("refuted residual without a falsified clause");
    }
    const VarId x = node.root_var();
    Assignment low = path;
    low.bind(x, false);
    const std::size_t i0 = build(node.left(), low);
    if (!clause_at(i0).contains(pos(x))) return i0;
    Assignment high = path;
    high.bind(x, true);
    const std::size_t i1 = build(node.right(), high);
    if (!clause_at(i1).contains(neg(x))) return i1;
    ResolutionStep s;
    s.pivot = x;
    s.left = i0;
    s.right = i1;
    s.resolvent = resolve(clause_at(i0), clause_at(i1), x);
    steps.push_back(std::move(s));
    return leaves.size() + steps.size() - 1;
  };

  Assignment empty;
  const std::size_t root = build(t, empty);
  return ResolutionProof(std::move(leaves), std::move(steps), root);
}

// ---------------------------------------------------------------------------
// Unit-guard transforms: replace one clause (or every clause) behind a fresh
// unit-triggered guard, concentrating the fresh variable's elimination into
// a single resolution step of any optimal proof.
// ---------------------------------------------------------------------------

namespace detail {
// {x, ¬x∨y} ∪ {¬y∨δ : δ ∈ F} with no preconditions (used by the reduction,
// whose embedded formula may be satisfiable on purpose).
inline Formula f_shape(const Formula& f, VarId x, VarId y) {
  std::vector<Clause> out;
  out.push_back(Clause{pos(x)});
  out.push_back(Clause{neg(x), pos(y)});
  for (const Clause& c : f) out.push_back(disjoin(c, neg(y)));
  return Formula(std::move(out));
}
} // namespace detail

// {x, ¬x∨γ} ∪ (F ∖ {γ}) for a fresh x; keeps the formula unsatisfiable while
// making γ reachable only through the guard.
inline Formula g_transform(const Formula& f, const Clause& gamma, VarId x) {
  if (!f.contains(gamma))
    throw std::invalid_argument("guarded clause must belong to the formula");
  if (x <= 0 || f.mentions(x))
    throw std::invalid_argument("guard variable must be fresh");
  if (is_satisfiable(f))
    throw std::invalid_argument("formula must be unsatisfiable");
  std::vector<Clause> rest;
  for (const Clause& c : f)
    if (!(c == gamma)) rest.push_back(c);
  if (!is_satisfiable(Formula(rest)))
    throw std::invalid_argument(
        "removing the guarded clause must make the formula satisfiable");
  rest.push_back(Clause{pos(x)});
  rest.push_back(detail::disjoin(gamma, neg(x)));
  return Formula(std::move(rest));
}

// {x, ¬x∨y} ∪ {¬y∨δ : δ ∈ F} for fresh distinct x, y; F must be
// unsatisfiable.
inline Formula f_transform(const Formula& f, VarId x, VarId y) {
  if (x <= 0 || y <= 0 || x == y)
    throw std::invalid_argument("guard variables must be distinct and fresh");
  if (f.mentions(x) || f.mentions(y))
    throw std::invalid_argument("guard variables must be fresh");
  if (is_satisfiable(f))
    throw std::invalid_argument("formula must be unsatisfiable");
  return detail::f_shape(f, x, y);
}

// ---------------------------------------------------------------------------
// Rewriting a proof so that its only resolution on x happens directly at the
// leaves: the unique ¬x leaf is pre-resolved with the unit x, every other
// x-step collapses onto its ¬x-side parent, and all remaining steps are
// re-derived without their ¬x literals.
// ---------------------------------------------------------------------------

inline ResolutionProof push_pivot_to_leaves(const ResolutionProof& p, VarId x) {
  const std::vector<Clause>& leaves = p.leaves();
  std::size_t unit_leaf = leaves.size(), neg_leaf = leaves.size();
  for (std::size_t i = 0; i < leaves.size(); ++i) {
    if (leaves[i] == Clause{pos(x)}) unit_leaf = i;
    if (leaves[i].contains(neg(x))) {
      if (neg_leaf != leaves.size())
        throw std::invalid_argument(
            "push to leaves: several input clauses mention the negated "
            "variable");
      neg_leaf = i;
    }
  }
  if (unit_leaf == leaves.size())
    throw std::invalid_argument(
        "push to leaves: no unit input clause for the variable");
  if (neg_leaf == leaves.size())
    throw std::invalid_argument(
        "push to leaves: no input clause mentions the negated variable");
  bool any_x_step = false;
  for (const ResolutionStep& s : p.steps())
    if (s.pivot == x) any_x_step = true;
  if (!any_x_step)
    throw std::invalid_argument(
        "push to leaves: the proof never resolves on the variable");

  std::vector<ResolutionStep> steps;
  // New leaf-level step: (¬x∨γ) against the unit x.
  {
    ResolutionStep s;
    s.pivot = x;
    s.left = std::min(unit_leaf, neg_leaf);
    s.right = std::max(unit_leaf, neg_leaf);
    s.resolvent = resolve(leaves[unit_leaf], leaves[neg_leaf], x);
    steps.push_back(std::move(s));
  }
  const std::size_t r0 = leaves.size(); // index of the new step's node

  // Map old node ids to new ones.  The ¬x leaf is replaced by r0; collapsed
  // x-steps forward to their rewritten ¬x-side parent.
  std::vector<std::size_t> remap(leaves.size() + p.steps().size());
  for (std::size_t i = 0; i < leaves.size(); ++i)
    remap[i] = i == neg_leaf ? r0 : i;
  auto new_clause = [&](std::size_t id) -> const Clause& {
    return id < leaves.size() ? leaves[id]
                              : steps[id - leaves.size()].resolvent;
  };
  for (std::size_t k = 0; k < p.steps().size(); ++k) {
    const ResolutionStep& s = p.steps()[k];
    const std::size_t old_id = leaves.size() + k;
    if (s.pivot == x) {
      std::size_t other;
      if (p.clause_of(s.left) == Clause{pos(x)})
        other = s.right;
      else if (p.clause_of(s.right) == Clause{pos(x)})
        other = s.left;
      else
        throw std::invalid_argument(
            "push to leaves: a resolution on the variable is not against the "
            "unit clause");
      remap[old_id] = remap[other];
      continue;
    }
    ResolutionStep ns;
    ns.pivot = s.pivot;
    ns.left = remap[s.left];
    ns.right = remap[s.right];
    ns.resolvent = resolve(new_clause(ns.left), new_clause(ns.right), s.pivot);
    steps.push_back(std::move(ns));
    remap[old_id] = leaves.size() + steps.size() - 1;
  }
  return ResolutionProof(leaves, std::move(steps), remap[p.root()]);
}

// ---------------------------------------------------------------------------
// The optimal-resolution-pair decision: does some minimum-size regular
// refutation resolve these two input clauses with each other?
// ---------------------------------------------------------------------------

inline bool is_optimal_resolution_pair(const Formula& f, const Clause& gamma,
                                       const Clause& delta,
                                       std::uint64_t budget) {
  if (!f.contains(gamma) || !f.contains(delta))
    throw std::invalid_argument("pair clauses must belong to the formula");
  if (!detail::single_clash_var(gamma, delta))
    throw std::invalid_argument(
        "pair clauses must clash on exactly one variable");
  if (f.has_empty_clause()) return false; // the empty proof has no steps
  if (is_satisfiable(f)) return false;    // no refutations at all

  std::size_t gi = 0, di = 0, idx = 0;
  for (const Clause& c : f) {
    if (c == gamma) gi = idx;
    if (c == delta) di = idx;
    ++idx;
  }
  bool hit = false;
  enumerate_min_proofs(f, budget, [&](const ResolutionProof& p) {
    for (const ResolutionStep& s : p.steps())
      if ((s.left == gi && s.right == di) || (s.left == di && s.right == gi))
        hit = true;
  });
  return hit;
}

// ---------------------------------------------------------------------------
// Reduction from satisfiability to the optimal-resolution-pair question:
// F ↦ f-shape(F) ∪ f-shape(H) with H an input block whose minimum regular
// proof is verified to exceed the hard threshold.  All minimum proofs of the
// union live on the cheaper side, so the first guard pair is optimal exactly
// when F is unsatisfiable, and the second exactly when it is satisfiable.
// ---------------------------------------------------------------------------

inline ReductionOutput reduce_orp(const Formula& f, FreshAllocator& alloc,
                                  std::uint64_t hard_threshold) {
  constexpr std::uint64_t kVerifyBudget = 2'000'000;
  if (hard_threshold > 6)
    throw std::invalid_argument(
        "hard threshold too large for the desk-scale block ladder");
  // Pick the smallest full-width block whose minimum regular proof exceeds
  // the threshold, probing on a scratch alphabet first.
  std::size_t block_n = 0;
  for (std::size_t n = 1; n <= 3 && block_n == 0; ++n) {
    FreshAllocator probe(1);
    if (!detail::has_regular_proof_within(complete_block_formula(n, probe),
                                          hard_threshold, kVerifyBudget))
      block_n = n;
  }
  if (block_n == 0)
    throw std::runtime_error("no desk-scale block exceeds the hard threshold");

  alloc.reserve(f);
  const VarId x = alloc.fresh();
  const VarId y = alloc.fresh();
  Formula h = complete_block_formula(block_n, alloc);
  const VarId w = alloc.fresh();
  const VarId z = alloc.fresh();

  ReductionOutput out;
  out.formula = union_disjoint(detail::f_shape(f, x, y),
                               detail::f_shape(h, w, z));
  out.distinguished = x;
  out.expected_semantics =
      "resolving the first guard pair (the unit and its ¬-guard clause) is "
      "an optimal resolution pair iff the embedded formula is "
      "unsatisfiable; the second guard pair is optimal iff it is "
      "satisfiable (valid while the embedded formula's minimum proof stays "
      "within the hard threshold)";
  out.roles["first_pair"] = {x, y};
  out.roles["second_pair"] = {w, z};
  out.roles["hard_block"] = h.variables();
  out.roles["embedded"] = f.variables();
  return out;
}

} // namespace optsearch
