#pragma once
// Test-side reference implementations, deliberately direct and shortcut-free:
// truth-table satisfiability and model counting, a definitional optimal-size
// recursion, and a tiny deterministic formula generator. These are the
// independent oracles the library results are frozen against.

#include <cstddef>
#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "optsearch/cnf.hpp"
#include "optsearch/tree.hpp"

namespace testutil {

using namespace optsearch;

inline bool tt_satisfiable(const Formula& f) {
  std::vector<VarId> vars = f.variables();
  if (f.has_empty_clause()) return false;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << vars.size());
       ++bits) {
    Assignment a;
    for (std::size_t i = 0; i < vars.size(); ++i)
      a.bind(vars[i], (bits >> i) & 1);
    if (restricted(f, a).empty()) return true;
  }
  return false;
}

inline std::uint64_t tt_count_models(const Formula& f,
                                     const std::vector<VarId>& universe) {
  std::uint64_t n = 0;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << universe.size());
       ++bits) {
    Assignment a;
    for (std::size_t i = 0; i < universe.size(); ++i)
      a.bind(universe[i], (bits >> i) & 1);
    if (restricted(f, a).empty()) ++n;
  }
  return n;
}

// the recursive definition, verbatim: no memo, no bounds, no shortcuts
inline ProofSize naive_optimal_size(const Formula& f, const TreeDiscipline& d) {
  Formula c = d.closure(f);
  if (c.has_empty_clause()) return ProofSize::finite(0);
  ProofSize best = ProofSize::infinite();
  for (VarId x : c.variables()) {
    if (!d.branchable(x)) continue;
    ProofSize v = ProofSize::finite(1) +
                  naive_optimal_size(restricted(c, neg(x)), d) +
                  naive_optimal_size(restricted(c, pos(x)), d);
    best = ProofSize::min(best, v);
  }
  return best;
}

inline Formula random_formula(std::mt19937_64& rng, int max_var, int n_clauses,
                              int max_width) {
  std::vector<Clause> cs;
  for (int i = 0; i < n_clauses; ++i) {
    int w = 1 + static_cast<int>(rng() % max_width);
    std::vector<Literal> lits;
    for (int j = 0; j < w; ++j) {
      VarId v = 1 + static_cast<VarId>(rng() % max_var);
      lits.emplace_back(v, rng() % 2 == 0);
    }
    cs.emplace_back(std::move(lits));
  }
  return Formula(std::move(cs));
}

// rejection-sample an unsatisfiable formula
inline Formula random_unsat(std::mt19937_64& rng, int max_var, int n_clauses,
                            int max_width, int max_tries = 10000) {
  for (int t = 0; t < max_tries; ++t) {
    Formula f = random_formula(rng, max_var, n_clauses, max_width);
    if (!tt_satisfiable(f)) return f;
  }
  throw std::runtime_error("random_unsat: no unsat sample found");
}

// rename every variable v to v + offset (used to make disjoint pairs)
inline Formula shift_vars(const Formula& f, VarId offset) {
  std::vector<Clause> cs;
  cs.reserve(f.size());
  for (const Clause& c : f) {
    std::vector<Literal> lits;
    lits.reserve(c.size());
    for (Literal l : c) lits.emplace_back(l.var() + offset, l.positive());
    cs.emplace_back(std::move(lits));
  }
  return Formula(std::move(cs));
}

// exhaustively enumerate every valid tree of exactly the given size
// (capped); pairing with the oracle size this lists all optimal trees
inline std::vector<SearchTree> all_trees_of_size(const Formula& f,
                                                 const TreeDiscipline& d,
                                                 std::uint64_t size,
                                                 std::size_t cap = 20000) {
  std::vector<SearchTree> out;
  Formula c = d.closure(f);
  if (c.has_empty_clause()) {
    if (size == 0) out.emplace_back();
    return out;
  }
  if (size == 0) return out;
  for (VarId x : c.variables()) {
    if (!d.branchable(x)) continue;
    for (std::uint64_t a = 0; a < size; ++a) {
      const std::uint64_t b = size - 1 - a;
      auto ls = all_trees_of_size(restricted(c, neg(x)), d, a, cap);
      if (ls.empty()) continue;
      auto rs = all_trees_of_size(restricted(c, pos(x)), d, b, cap);
      for (const SearchTree& l : ls)
        for (const SearchTree& r : rs) {
          out.emplace_back(x, l, r);
          if (out.size() >= cap) return out;
        }
    }
  }
  return out;
}

// the top of the tree is a complete binary tree deciding exactly the given
// variables (in any per-path order); nothing is checked below that region
inline bool complete_over(const SearchTree& t, std::set<VarId> xs) {
  if (xs.empty()) return true;
  if (t.empty()) return false;
  if (!xs.count(t.root_var())) return false;
  xs.erase(t.root_var());
  return complete_over(t.left(), xs) && complete_over(t.right(), xs);
}

} // namespace testutil
