#pragma once
// CNF core: literals, clauses and formulas in canonical form, restriction,
// unit propagation, the monotone (pure) literal rule, the two closures used
// by the search disciplines, satisfiability and model counting.
//
// Canonical form is a class invariant: clause literals are sorted by
// (variable id, positive-before-negative) and deduplicated; formula clauses
// are sorted lexicographically and deduplicated. Tautological clauses are
// kept as-is. The empty clause is a Clause with no literals.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace optsearch {

using VarId = int; // 1-based variable ids

class Literal {
public:
  Literal(VarId var, bool positive) : code_(positive ? var : -var) {
    if (var <= 0) throw std::invalid_argument("variable ids are positive");
  }

  static Literal from_dimacs(int code) {
    if (code == 0) throw std::invalid_argument("0 is not a literal");
    return Literal(code < 0 ? -code : code, code > 0);
  }

  VarId var() const { return code_ < 0 ? -code_ : code_; }
  bool positive() const { return code_ > 0; }
  Literal negated() const { return Literal(var(), !positive()); }
  int dimacs() const { return code_; }

  // var ascending, positive literal before negative literal of the same var
  friend bool operator<(Literal a, Literal b) {
    if (a.var() != b.var()) return a.var() < b.var();
    return a.positive() && !b.positive();
  }
  friend bool operator==(Literal a, Literal b) { return a.code_ == b.code_; }

private:
  int code_;
};

inline Literal pos(VarId v) { return Literal(v, true); }
inline Literal neg(VarId v) { return Literal(v, false); }

class Clause {
public:
  Clause() = default; // the empty clause
  explicit Clause(std::vector<Literal> lits) : lits_(std::move(lits)) {
    std::sort(lits_.begin(), lits_.end());
    lits_.erase(std::unique(lits_.begin(), lits_.end()), lits_.end());
  }
  Clause(std::initializer_list<Literal> lits)
      : Clause(std::vector<Literal>(lits)) {}

  bool empty() const { return lits_.empty(); }
  std::size_t size() const { return lits_.size(); }
  auto begin() const { return lits_.begin(); }
  auto end() const { return lits_.end(); }

  bool contains(Literal l) const {
    return std::binary_search(lits_.begin(), lits_.end(), l);
  }
  bool contains_var(VarId v) const {
    return contains(pos(v)) || contains(neg(v));
  }
  bool tautological() const {
    for (std::size_t i = 0; i + 1 < lits_.size(); ++i)
      if (lits_[i].var() == lits_[i + 1].var()) return true;
    return false;
  }

  // clause with l removed (for resolution); l must occur
  Clause without(Literal l) const {
    std::vector<Literal> out;
    out.reserve(lits_.size() - 1);
    for (Literal x : lits_)
      if (!(x == l)) out.push_back(x);
    if (out.size() == lits_.size())
      throw std::invalid_argument("literal not in clause");
    return Clause(std::move(out));
  }

  friend bool operator==(const Clause& a, const Clause& b) {
    return a.lits_ == b.lits_;
  }
  friend bool operator<(const Clause& a, const Clause& b) {
    return std::lexicographical_compare(a.lits_.begin(), a.lits_.end(),
                                        b.lits_.begin(), b.lits_.end());
  }

private:
  std::vector<Literal> lits_;
};

class Assignment {
public:
  Assignment() = default;
  Assignment(std::initializer_list<Literal> lits) {
    for (Literal l : lits) bind(l);
  }

  void bind(VarId v, bool value) {
    auto [it, fresh] = map_.emplace(v, value);
    if (!fresh && it->second != value)
      throw std::invalid_argument("contradictory binding");
  }
  void bind(Literal l) { bind(l.var(), l.positive()); }

  std::optional<bool> value(VarId v) const {
    auto it = map_.find(v);
    if (it == map_.end()) return std::nullopt;
    return it->second;
  }
  bool defined(VarId v) const { return map_.count(v) != 0; }
  bool satisfies(Literal l) const {
    auto val = value(l.var());
    return val && *val == l.positive();
  }
  std::size_t size() const { return map_.size(); }
  bool empty() const { return map_.empty(); }
  auto begin() const { return map_.begin(); }
  auto end() const { return map_.end(); }

  friend bool operator==(const Assignment&, const Assignment&) = default;

private:
  std::map<VarId, bool> map_;
};

class Formula {
public:
  Formula() = default; // no clauses
  explicit Formula(std::vector<Clause> clauses) : clauses_(std::move(clauses)) {
    std::sort(clauses_.begin(), clauses_.end());
    clauses_.erase(std::unique(clauses_.begin(), clauses_.end()),
                   clauses_.end());
  }
  Formula(std::initializer_list<Clause> clauses)
      : Formula(std::vector<Clause>(clauses)) {}

  bool empty() const { return clauses_.empty(); }
  std::size_t size() const { return clauses_.size(); }
  auto begin() const { return clauses_.begin(); }
  auto end() const { return clauses_.end(); }

  bool has_empty_clause() const {
    return !clauses_.empty() && clauses_.front().empty();
  }
  bool contains(const Clause& c) const {
    return std::binary_search(clauses_.begin(), clauses_.end(), c);
  }

  std::vector<VarId> variables() const {
    std::vector<VarId> vs;
    for (const Clause& c : clauses_)
      for (Literal l : c) vs.push_back(l.var());
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    return vs;
  }
  bool mentions(VarId v) const {
    for (const Clause& c : clauses_)
      if (c.contains_var(v)) return true;
    return false;
  }
  VarId max_var() const {
    VarId m = 0;
    for (const Clause& c : clauses_)
      for (Literal l : c) m = std::max(m, l.var());
    return m;
  }

  std::uint64_t fingerprint() const {
    std::uint64_t h = 1469598103934665603ull; // FNV-1a
    auto mix = [&h](std::int64_t x) {
      for (int i = 0; i < 8; ++i) {
        h ^= static_cast<std::uint64_t>(x >> (8 * i)) & 0xff;
        h *= 1099511628211ull;
      }
    };
    for (const Clause& c : clauses_) {
      for (Literal l : c) mix(l.dimacs());
      mix(0);
    }
    return h;
  }

  friend bool operator==(const Formula& a, const Formula& b) {
    return a.clauses_ == b.clauses_;
  }
  friend bool operator<(const Formula& a, const Formula& b) {
    return std::lexicographical_compare(a.clauses_.begin(), a.clauses_.end(),
                                        b.clauses_.begin(), b.clauses_.end());
  }

private:
  std::vector<Clause> clauses_;
};

struct FormulaHash {
  std::size_t operator()(const Formula& f) const {
    return static_cast<std::size_t>(f.fingerprint());
  }
};

// ---------------------------------------------------------------------------
// restriction

inline Formula restricted(const Formula& f, const Assignment& a) {
  std::vector<Clause> out;
  out.reserve(f.size());
  for (const Clause& c : f) {
    bool satisfied = false;
    std::vector<Literal> kept;
    for (Literal l : c) {
      auto val = a.value(l.var());
      if (!val) {
        kept.push_back(l);
      } else if (*val == l.positive()) {
        satisfied = true;
        break;
      } // else: literal falsified, dropped
    }
    if (!satisfied) out.emplace_back(std::move(kept));
  }
  return Formula(std::move(out));
}

inline Formula restricted(const Formula& f, Literal l) {
  Assignment a;
  a.bind(l);
  return restricted(f, a);
}

// ---------------------------------------------------------------------------
// unit propagation and the monotone (pure) literal rule

struct PropagationResult {
  Formula residual;
  Assignment forced;
};

// Repeatedly binds the first unit clause (in canonical clause order) until no
// unit remains or the empty clause appears. residual == restricted(input, forced).
inline PropagationResult unit_propagate(const Formula& f) {
  Formula cur = f;
  Assignment forced;
  while (!cur.has_empty_clause()) {
    const Clause* unit = nullptr;
    for (const Clause& c : cur)
      if (c.size() == 1) {
        unit = &c;
        break;
      }
    if (!unit) break;
    Literal l = *unit->begin();
    forced.bind(l);
    cur = restricted(cur, l);
  }
  return {std::move(cur), std::move(forced)};
}

// One simultaneous pass: every variable occurring with a single polarity is
// bound to satisfy its occurrences.
inline PropagationResult pure_eliminate(const Formula& f) {
  std::map<VarId, int> polarity; // +1 only positive, -1 only negative, 0 both
  for (const Clause& c : f)
    for (Literal l : c) {
      int p = l.positive() ? +1 : -1;
      auto [it, fresh] = polarity.emplace(l.var(), p);
      if (!fresh && it->second != p) it->second = 0;
    }
  Assignment pure;
  for (auto [v, p] : polarity)
    if (p != 0) pure.bind(v, p > 0);
  return {restricted(f, pure), std::move(pure)};
}

// Unit propagation to fixpoint (the closure used by the unit-only discipline).
inline Formula up_closure(const Formula& f) { return unit_propagate(f).residual; }

// Alternates unit propagation to fixpoint with one simultaneous pure pass
// until neither changes the formula or the empty clause appears.
inline Formula dpll_closure(const Formula& f) {
  Formula cur = f;
  for (;;) {
    cur = unit_propagate(cur).residual;
    if (cur.has_empty_clause()) return cur;
    Formula next = pure_eliminate(cur).residual;
    if (next == cur) return cur;
    cur = std::move(next);
  }
}

// ---------------------------------------------------------------------------
// satisfiability and model counting

// Partitions the clauses into groups with pairwise-disjoint variable sets.
// The empty clause (no variables) forms its own group.
inline std::vector<Formula> split_components(const Formula& f) {
  std::map<VarId, VarId> parent;
  std::function<VarId(VarId)> find = [&](VarId v) {
    while (parent[v] != v) {
      parent[v] = parent[parent[v]];
      v = parent[v];
    }
    return v;
  };
  for (VarId v : f.variables()) parent[v] = v;
  for (const Clause& c : f) {
    auto it = c.begin();
    if (it == c.end()) continue;
    VarId root = find(it->var());
    for (Literal l : c) parent[find(l.var())] = root;
  }
  std::map<VarId, std::vector<Clause>> groups;
  std::vector<Clause> empties;
  for (const Clause& c : f) {
    if (c.empty())
      empties.push_back(c);
    else
      groups[find(c.begin()->var())].push_back(c);
  }
  std::vector<Formula> out;
  if (!empties.empty()) out.emplace_back(std::move(empties));
  for (auto& [root, clauses] : groups) out.emplace_back(std::move(clauses));
  return out;
}

namespace detail {
// Branch choice for plain satisfiability search: a most-frequent variable of a
// shortest clause (lowest id on ties). Assumes f is non-empty with no empty
// clause.
inline VarId sat_branch_var(const Formula& f) {
  std::size_t wmin = ~std::size_t{0};
  for (const Clause& c : f) wmin = std::min(wmin, c.size());
  std::map<VarId, int> freq;
  for (const Clause& c : f)
    if (c.size() == wmin)
      for (Literal l : c) ++freq[l.var()];
  VarId best = 0;
  int best_n = -1;
  for (auto [v, n] : freq)
    if (n > best_n) {
      best = v;
      best_n = n;
    }
  return best;
}
} // namespace detail

inline bool is_satisfiable(const Formula& f) {
  Formula c = dpll_closure(f);
  if (c.has_empty_clause()) return false;
  if (c.empty()) return true;
  std::vector<Formula> comps = split_components(c);
  if (comps.size() > 1) {
    for (const Formula& comp : comps)
      if (!is_satisfiable(comp)) return false;
    return true;
  }
  VarId v = detail::sat_branch_var(c);
  return is_satisfiable(restricted(c, neg(v))) ||
         is_satisfiable(restricted(c, pos(v)));
}

namespace detail {
inline std::uint64_t count_models_rec(const Formula& f,
                                      const std::vector<VarId>& universe,
                                      std::size_t idx) {
  if (f.has_empty_clause()) return 0;
  if (f.empty()) return std::uint64_t{1} << (universe.size() - idx);
  VarId v = universe[idx];
  return count_models_rec(restricted(f, neg(v)), universe, idx + 1) +
         count_models_rec(restricted(f, pos(v)), universe, idx + 1);
}
} // namespace detail

// Number of assignments of `universe` satisfying f. Var(f) must be contained
// in `universe` and |universe| must stay below 64.
inline std::uint64_t count_models(const Formula& f, std::vector<VarId> universe) {
  std::sort(universe.begin(), universe.end());
  universe.erase(std::unique(universe.begin(), universe.end()), universe.end());
  if (universe.size() >= 64)
    throw std::invalid_argument("universe too large for model counting");
  for (VarId v : f.variables())
    if (!std::binary_search(universe.begin(), universe.end(), v))
      throw std::invalid_argument("formula variable outside universe");
  return detail::count_models_rec(f, universe, 0);
}

} // namespace optsearch
