#pragma once
// Exact optimal-tree-size oracle: memoized branch-and-bound over closed
// residual formulas.
//
// Soundness rules:
//  - a memo entry for a closed residual is either proven-exact (finite size or
//    proven "no tree") or a proven lower bound left behind by a bounded search
//    that failed; lower bounds only ever speed up later retries;
//  - a branch skipped because of the current bound has size >= the bound at
//    skip time, which only decreases, so a completed minimum stays exact;
//  - "no tree" is certified by satisfiability, by a restricted-branching dead
//    end, or by exceeding the structural ceiling 2^|branchable| - 1.
//
// The node budget is charged per public call (the memo persists across calls
// of one Oracle instance); exhaustion raises BudgetExhausted, a distinct
// outcome that is never conflated with "no tree exists".

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "optsearch/cnf.hpp"
#include "optsearch/tree.hpp"

namespace optsearch {

using BigNat = boost::multiprecision::cpp_int;

struct OracleConfig {
  TreeDiscipline discipline = TreeDiscipline::backtracking();
  // maximum search-node count per public call; unset = unlimited
  std::optional<std::uint64_t> node_budget;
  // exploit s(F ∪ H) = min(s(F), s(H)) for variable-disjoint parts inside the
  // search; off by default so that law-verification runs stay non-circular
  bool decompose_components = false;

  static OracleConfig with(TreeDiscipline d) {
    OracleConfig c;
    c.discipline = std::move(d);
    return c;
  }
};

struct BudgetExhausted : std::runtime_error {
  BudgetExhausted() : std::runtime_error("search budget exhausted") {}
};

struct NoRefutation : std::invalid_argument {
  NoRefutation()
      : std::invalid_argument("formula has no refutation under this discipline") {}
};

class Oracle {
  static constexpr std::uint64_t kInf = ~std::uint64_t{0}; // proven: no tree
  static constexpr std::uint64_t kCut = kInf - 1;          // >= limit, unknown
  static constexpr std::uint64_t kHeuristicFuel = 1u << 20;

public:
  explicit Oracle(OracleConfig cfg) : cfg_(std::move(cfg)) {
    if (cfg_.discipline.allowed) {
      auto& a = *cfg_.discipline.allowed;
      std::sort(a.begin(), a.end());
      a.erase(std::unique(a.begin(), a.end()), a.end());
    }
  }

  const OracleConfig& config() const { return cfg_; }
  std::uint64_t nodes_used() const { return nodes_; }

  // s(F): minimum tree size, or infinite when no tree exists
  ProofSize size(const Formula& f) {
    nodes_ = 0;
    std::uint64_t v = solve(f);
    return v == kInf ? ProofSize::infinite() : ProofSize::finite(v);
  }

  // some minimum-size tree; branch tie-break: smallest variable id
  SearchTree tree(const Formula& f) {
    nodes_ = 0;
    if (solve(f) == kInf) throw NoRefutation();
    return build_tree(f);
  }

  // true iff branching x first is consistent with the optimal size
  bool optimal_branch_var(const Formula& f, VarId x) {
    nodes_ = 0;
    Formula c = cfg_.discipline.closure(f);
    if (c.has_empty_clause()) return false; // the optimal tree is Empty
    std::uint64_t s = solve(c);
    if (s == kInf) {
      if (is_satisfiable(c)) throw NoRefutation();
      return false; // unrefutable under the branching restriction
    }
    if (!c.mentions(x) || !cfg_.discipline.branchable(x)) return false;
    std::uint64_t l = search(restricted(c, neg(x)), s);
    if (l >= kCut) return false;
    std::uint64_t r = search(restricted(c, pos(x)), s - l);
    if (r >= kCut) return false;
    return 1 + l + r == s;
  }

  // is there a tree of size at most k (k arbitrary precision)?
  bool has_tree_within(const Formula& f, const BigNat& k) {
    if (k < 0) throw std::invalid_argument("size bound must be non-negative");
    nodes_ = 0;
    std::uint64_t v = solve(f);
    if (v == kInf) return false;
    return BigNat(v) <= k;
  }

private:
  // exact: s(F) == v (kInf = proven no tree); otherwise v is a proven lower
  // bound ("no tree of size < v"), left behind by bounded searches so a retry
  // with the same or a smaller limit can fail fast instead of re-exploring
  struct MemoVal {
    std::uint64_t v;
    bool exact;
  };

  OracleConfig cfg_;
  std::unordered_map<Formula, MemoVal, FormulaHash> memo_;
  std::uint64_t nodes_ = 0;

  void bump() {
    ++nodes_;
    if (cfg_.node_budget && nodes_ > *cfg_.node_budget) throw BudgetExhausted();
  }

  std::vector<VarId> branchable_vars(const Formula& c) const {
    std::vector<VarId> vs = c.variables();
    if (!cfg_.discipline.allowed) return vs;
    std::vector<VarId> out;
    for (VarId v : vs)
      if (cfg_.discipline.branchable(v)) out.push_back(v);
    return out;
  }

  // frequent-in-short-clauses first; id ascending as the final tie-break
  std::vector<VarId> ordered_candidates(const Formula& c,
                                        std::vector<VarId> cand) const {
    std::size_t wmin = ~std::size_t{0};
    for (const Clause& cl : c) wmin = std::min(wmin, cl.size());
    std::map<VarId, std::pair<int, int>> score;
    for (VarId v : cand) score[v] = {0, 0};
    for (const Clause& cl : c)
      for (Literal l : cl) {
        auto it = score.find(l.var());
        if (it == score.end()) continue;
        ++it->second.second;
        if (cl.size() == wmin) ++it->second.first;
      }
    std::stable_sort(cand.begin(), cand.end(), [&](VarId a, VarId b) {
      const auto& sa = score.at(a);
      const auto& sb = score.at(b);
      if (sa.first != sb.first) return sa.first > sb.first;
      if (sa.second != sb.second) return sa.second > sb.second;
      return a < b;
    });
    return cand;
  }

  std::vector<Formula> components(const Formula& c) const {
    return split_components(c);
  }

  // Contract: returns the exact size when it is < limit; kInf when provably no
  // tree exists; kCut when only "size >= limit" was established.
  std::uint64_t search(const Formula& raw, std::uint64_t limit) {
    bump();
    if (limit == 0) return kCut;
    Formula c = cfg_.discipline.closure(raw);
    if (c.has_empty_clause()) return 0;
    if (auto it = memo_.find(c); it != memo_.end()) {
      if (it->second.exact) {
        std::uint64_t v = it->second.v;
        if (v == kInf) return kInf;
        return v < limit ? v : kCut;
      }
      if (it->second.v >= limit) return kCut; // known s >= lb >= limit
    }
    if (c.empty()) { // satisfiable residual
      memo_[c] = {kInf, true};
      return kInf;
    }
    std::vector<VarId> cand = branchable_vars(c);
    if (cand.empty()) { // restricted-branching dead end
      memo_[c] = {kInf, true};
      return kInf;
    }
    if (limit <= 1) return kCut; // any tree here needs at least one node

    if (cfg_.decompose_components) {
      auto comps = components(c);
      if (comps.size() > 1) return search_components(c, comps, limit);
    }

    std::uint64_t best = kCut;
    std::uint64_t cur = limit;
    bool saw_cut = false;
    for (VarId x : ordered_candidates(c, std::move(cand))) {
      std::uint64_t l = search(restricted(c, neg(x)), cur - 1);
      if (l == kInf) continue;
      if (l == kCut) {
        saw_cut = true;
        continue;
      }
      std::uint64_t r = search(restricted(c, pos(x)), cur - 1 - l);
      if (r == kInf) continue;
      if (r == kCut) {
        saw_cut = true;
        continue;
      }
      best = 1 + l + r; // < cur by the probe limits
      cur = best;
    }
    if (best != kCut) {
      memo_[c] = {best, true};
      return best;
    }
    if (!saw_cut) { // every branch has a provably-infinite side
      memo_[c] = {kInf, true};
      return kInf;
    }
    memo_[c] = {limit, false}; // every root choice was shown to cost >= limit
    return kCut;
  }

  std::uint64_t search_components(const Formula& whole,
                                  const std::vector<Formula>& comps,
                                  std::uint64_t limit) {
    std::uint64_t best = kCut;
    std::uint64_t cur = limit;
    bool saw_cut = false;
    bool all_inf = true;
    for (const Formula& comp : comps) {
      std::uint64_t v = search(comp, cur);
      if (v == kInf) continue;
      all_inf = false;
      if (v == kCut) {
        saw_cut = true;
        continue;
      }
      best = v;
      cur = v;
    }
    if (best != kCut) {
      memo_[whole] = {best, true};
      return best;
    }
    if (all_inf) {
      memo_[whole] = {kInf, true};
      return kInf;
    }
    (void)saw_cut;
    memo_[whole] = {limit, false}; // every component was shown to cost >= limit
    return kCut;
  }

  // greedy complete descent for an initial upper bound; nullopt when the
  // formula looks satisfiable/unrefutable along the way or fuel runs out
  std::optional<std::uint64_t> descend(const Formula& raw, std::uint64_t& fuel) {
    if (fuel == 0) return std::nullopt;
    --fuel;
    Formula c = cfg_.discipline.closure(raw);
    if (c.has_empty_clause()) return 0;
    if (auto it = memo_.find(c); it != memo_.end() && it->second.exact) {
      if (it->second.v == kInf) return std::nullopt;
      return it->second.v;
    }
    if (c.empty()) return std::nullopt;
    std::vector<VarId> cand = branchable_vars(c);
    if (cand.empty()) return std::nullopt;
    VarId x = ordered_candidates(c, std::move(cand)).front();
    auto l = descend(restricted(c, neg(x)), fuel);
    if (!l) return std::nullopt;
    auto r = descend(restricted(c, pos(x)), fuel);
    if (!r) return std::nullopt;
    return 1 + *l + *r;
  }

  std::uint64_t solve(const Formula& f) {
    Formula c = cfg_.discipline.closure(f);
    if (c.has_empty_clause()) return 0;
    std::uint64_t known_lb = 2;
    if (auto it = memo_.find(c); it != memo_.end()) {
      if (it->second.exact) return it->second.v;
      known_lb = std::max(known_lb, it->second.v);
    }
    std::vector<VarId> cand = branchable_vars(c);
    if (c.empty() || cand.empty()) {
      memo_[c] = {kInf, true};
      return kInf;
    }
    if (is_satisfiable(c)) {
      memo_[c] = {kInf, true};
      return kInf;
    }
    // finite sizes are bounded by 2^|branchable| - 1
    std::uint64_t maxfin = cand.size() >= 62 ? (std::uint64_t{1} << 62)
                                             : (std::uint64_t{1} << cand.size());
    std::uint64_t fuel = kHeuristicFuel;
    if (auto ub = descend(c, fuel)) {
      std::uint64_t v = search(c, *ub + 1);
      if (v < kCut) return v;
      if (v == kInf) return kInf; // cannot happen for unsat + found descent
    }
    std::uint64_t limit = known_lb;
    for (;;) {
      if (limit > maxfin) limit = maxfin;
      std::uint64_t v = search(c, limit);
      if (v == kInf) return kInf;
      if (v != kCut) return v;
      if (limit == maxfin) { // size >= 2^|branchable|: no finite tree
        memo_[c] = {kInf, true};
        return kInf;
      }
      limit *= 2;
    }
  }

  SearchTree build_tree(const Formula& f) {
    Formula c = cfg_.discipline.closure(f);
    if (c.has_empty_clause()) return SearchTree();
    std::uint64_t t = solve(c);
    for (VarId x : branchable_vars(c)) { // ascending id: published tie-break
      Formula f0 = restricted(c, neg(x));
      std::uint64_t l = search(f0, t);
      if (l >= kCut) continue;
      Formula f1 = restricted(c, pos(x));
      std::uint64_t r = search(f1, t - l);
      if (r >= kCut) continue;
      if (1 + l + r == t)
        return SearchTree(x, build_tree(f0), build_tree(f1));
    }
    throw std::logic_error("optimal tree reconstruction failed");
  }
};

// one-shot conveniences (fresh oracle, budget applies to the single call)

inline ProofSize optimal_size(const Formula& f, const OracleConfig& cfg) {
  return Oracle(cfg).size(f);
}

inline SearchTree optimal_tree(const Formula& f, const OracleConfig& cfg) {
  return Oracle(cfg).tree(f);
}

inline bool is_optimal_branch_var(const Formula& f, VarId x,
                                  const OracleConfig& cfg) {
  return Oracle(cfg).optimal_branch_var(f, x);
}

inline bool has_tree_within(const Formula& f, const BigNat& k,
                            const OracleConfig& cfg) {
  return Oracle(cfg).has_tree_within(f, k);
}

} // namespace optsearch
