#pragma once
// Formula combinators over disjoint variable sets: union, sum (fresh
// connective variable), product (pairwise disjunction), and the structural
// tree substitution matching the product law.

#include <initializer_list>
#include <stdexcept>
#include <utility>
#include <vector>

#include "optsearch/cnf.hpp"
#include "optsearch/tree.hpp"

namespace optsearch {

class FreshAllocator {
public:
  explicit FreshAllocator(VarId first = 1) : next_(first) {
    if (first <= 0) throw std::invalid_argument("ids are positive");
  }

  // allocator starting above every variable of the given formulas
  static FreshAllocator above(std::initializer_list<const Formula*> fs) {
    FreshAllocator a;
    for (const Formula* f : fs) a.reserve(*f);
    return a;
  }
  static FreshAllocator above(const Formula& f) { return above({&f}); }

  void reserve(const Formula& f) { next_ = std::max(next_, f.max_var() + 1); }
  void reserve_id(VarId v) { next_ = std::max(next_, v + 1); }
  VarId fresh() { return next_++; }
  VarId peek() const { return next_; }

private:
  VarId next_;
};

namespace detail {
inline void require_disjoint(const Formula& f, const Formula& h,
                             const char* op) {
  for (VarId v : f.variables())
    if (h.mentions(v))
      throw std::invalid_argument(std::string(op) +
                                  ": operands share variable x" +
                                  std::to_string(v));
}

inline Clause disjoin(const Clause& c, Literal l) {
  std::vector<Literal> lits(c.begin(), c.end());
  lits.push_back(l);
  return Clause(std::move(lits));
}

inline Formula disjoin_all(const Formula& f, Literal l) {
  std::vector<Clause> out;
  out.reserve(f.size());
  for (const Clause& c : f) out.push_back(disjoin(c, l));
  return Formula(std::move(out));
}

inline Formula merge(const Formula& a, const Formula& b) {
  std::vector<Clause> out(a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  return Formula(std::move(out));
}
} // namespace detail

// plain clause-set union of variable-disjoint formulas
inline Formula union_disjoint(const Formula& f, const Formula& h) {
  detail::require_disjoint(f, h, "union");
  return detail::merge(f, h);
}

struct SumResult {
  Formula formula;
  VarId connective;
};

// (F ∨ x) ∪ (H ∨ ¬x) with x fresh
inline SumResult sum(const Formula& f, const Formula& h, FreshAllocator& alloc) {
  detail::require_disjoint(f, h, "sum");
  alloc.reserve(f);
  alloc.reserve(h);
  VarId x = alloc.fresh();
  return {detail::merge(detail::disjoin_all(f, pos(x)),
                        detail::disjoin_all(h, neg(x))),
          x};
}

// all pairwise disjunctions of clauses
inline Formula product(const Formula& f, const Formula& h) {
  detail::require_disjoint(f, h, "product");
  std::vector<Clause> out;
  out.reserve(f.size() * h.size());
  for (const Clause& cf : f)
    for (const Clause& ch : h) {
      std::vector<Literal> lits(cf.begin(), cf.end());
      lits.insert(lits.end(), ch.begin(), ch.end());
      out.emplace_back(std::move(lits));
    }
  return Formula(std::move(out));
}

// every empty subtree of the first tree replaced by a copy of the second
inline SearchTree product_tree(const SearchTree& tf, const SearchTree& th) {
  if (tf.empty()) return th;
  return SearchTree(tf.root_var(), product_tree(tf.left(), th),
                    product_tree(tf.right(), th));
}

} // namespace optsearch
