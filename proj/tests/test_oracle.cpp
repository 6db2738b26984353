#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "helpers.hpp"
#include "optsearch/cnf_io.hpp"
#include "optsearch/oracle.hpp"

using namespace optsearch;
using namespace testutil;

namespace {
const Formula kPair = parse_formula("{x1, -x1}");
const Formula kTwo = parse_formula("{x1 x2, x1 -x2, -x1 x2, -x1 -x2}");

OracleConfig cfg(TreeDiscipline d) { return OracleConfig::with(std::move(d)); }
} // namespace

TEST_CASE("pinned optimal sizes") {
  CHECK(optimal_size(parse_formula("{0}"), cfg(TreeDiscipline::backtracking())) ==
        ProofSize::finite(0));
  CHECK(optimal_size(kPair, cfg(TreeDiscipline::backtracking())) ==
        ProofSize::finite(1));
  CHECK(optimal_size(kPair, cfg(TreeDiscipline::dpll())) == ProofSize::finite(0));
  CHECK(optimal_size(kPair, cfg(TreeDiscipline::dpll_mono())) ==
        ProofSize::finite(0));

  CHECK(optimal_size(kTwo, cfg(TreeDiscipline::backtracking())) ==
        ProofSize::finite(3));
  CHECK(optimal_size(kTwo, cfg(TreeDiscipline::dpll())) == ProofSize::finite(1));
  CHECK(optimal_size(kTwo, cfg(TreeDiscipline::dpll_mono())) ==
        ProofSize::finite(1));

  // two named pigeons, one hole
  Formula php = parse_formula("{x1, x2, -x1 -x2}");
  CHECK(optimal_size(php, cfg(TreeDiscipline::backtracking())) ==
        ProofSize::finite(2));

  // satisfiable inputs have no refutation
  CHECK(optimal_size(parse_formula("{x1 x2}"), cfg(TreeDiscipline::backtracking())) ==
        ProofSize::infinite());
  CHECK(optimal_size(Formula(), cfg(TreeDiscipline::dpll())) ==
        ProofSize::infinite());
}

TEST_CASE("restricted branching can make refutation impossible") {
  auto c = cfg(TreeDiscipline::backtracking().restricted_to({2}));
  CHECK(optimal_size(kTwo, c) == ProofSize::infinite());
  auto full = cfg(TreeDiscipline::backtracking().restricted_to({1, 2}));
  CHECK(optimal_size(kTwo, full) == ProofSize::finite(3));
}

TEST_CASE("oracle matches the definitional recursion") {
  std::mt19937_64 rng(7201);
  std::vector<TreeDiscipline> disciplines = {
      TreeDiscipline::backtracking(), TreeDiscipline::dpll(),
      TreeDiscipline::dpll_mono()};
  for (int i = 0; i < 150; ++i) {
    Formula f = random_formula(rng, 4, 2 + rng() % 7, 3);
    for (const auto& d : disciplines) {
      CAPTURE(to_text(f), d.kind_name());
      CHECK(optimal_size(f, cfg(d)) == naive_optimal_size(f, d));
    }
  }
}

TEST_CASE("oracle matches the definitional recursion under restriction") {
  std::mt19937_64 rng(7202);
  for (int i = 0; i < 100; ++i) {
    Formula f = random_formula(rng, 4, 2 + rng() % 6, 3);
    std::vector<VarId> allowed;
    for (VarId v = 1; v <= 4; ++v)
      if (rng() % 2) allowed.push_back(v);
    for (auto base : {TreeDiscipline::backtracking(), TreeDiscipline::dpll_mono()}) {
      TreeDiscipline d = base.restricted_to(allowed);
      CAPTURE(to_text(f), d.kind_name(), allowed);
      CHECK(optimal_size(f, cfg(d)) == naive_optimal_size(f, d));
    }
  }
}

TEST_CASE("optimal trees validate and have the optimal size") {
  std::mt19937_64 rng(7203);
  std::vector<TreeDiscipline> disciplines = {
      TreeDiscipline::backtracking(), TreeDiscipline::dpll(),
      TreeDiscipline::dpll_mono()};
  int done = 0;
  while (done < 60) {
    Formula f = random_formula(rng, 4, 3 + rng() % 6, 3);
    if (tt_satisfiable(f)) continue;
    ++done;
    for (const auto& d : disciplines) {
      Oracle o(cfg(d));
      SearchTree t = o.tree(f);
      CAPTURE(to_text(f), d.kind_name(), to_text(t));
      CHECK(validate_tree(f, t, d));
      CHECK(ProofSize::finite(t.size()) == o.size(f));
    }
  }
}

TEST_CASE("optimal tree tie-break picks the smallest variable id") {
  Formula f = parse_formula("{x1, -x1, x2, -x2}");
  SearchTree t = optimal_tree(f, cfg(TreeDiscipline::backtracking()));
  CHECK(t == SearchTree(1, {}, {}));
  CHECK_THROWS_AS(optimal_tree(parse_formula("{x1 x2}"),
                               cfg(TreeDiscipline::backtracking())),
                  NoRefutation);
}

TEST_CASE("optimal branch variable test") {
  // x1=F hits the unit clause at once; rooting at x2 costs 3 instead of 2
  Formula f = parse_formula("{x1, -x1 x2, -x1 -x2}");
  auto c = cfg(TreeDiscipline::backtracking());
  CHECK(is_optimal_branch_var(f, 1, c));
  CHECK_FALSE(is_optimal_branch_var(f, 2, c));
  CHECK_FALSE(is_optimal_branch_var(f, 9, c)); // not even a variable of f
  CHECK(is_optimal_branch_var(kPair, 1, c));
  CHECK_THROWS_AS(is_optimal_branch_var(parse_formula("{x1 x2}"), 1, c),
                  NoRefutation);
  // with the empty clause present, the optimal tree is empty: no root at all
  CHECK_FALSE(is_optimal_branch_var(parse_formula("{0, x1}"), 1, c));
}

TEST_CASE("optimal branch variable agrees with the definition") {
  std::mt19937_64 rng(7204);
  int done = 0;
  while (done < 60) {
    Formula f = random_formula(rng, 4, 3 + rng() % 5, 3);
    if (tt_satisfiable(f)) continue;
    ++done;
    for (auto d : {TreeDiscipline::backtracking(), TreeDiscipline::dpll()}) {
      Formula cl = d.closure(f);
      ProofSize s = naive_optimal_size(f, d);
      for (VarId v : f.variables()) {
        bool expect = false;
        if (!cl.has_empty_clause() && cl.mentions(v)) {
          ProofSize split = ProofSize::finite(1) +
                            naive_optimal_size(restricted(cl, neg(v)), d) +
                            naive_optimal_size(restricted(cl, pos(v)), d);
          expect = split == s;
        }
        CAPTURE(to_text(f), d.kind_name(), v);
        CHECK(is_optimal_branch_var(f, v, cfg(d)) == expect);
      }
    }
  }
}

TEST_CASE("size bound check with arbitrary precision") {
  auto c = cfg(TreeDiscipline::backtracking());
  CHECK(has_tree_within(kTwo, 3, c));
  CHECK_FALSE(has_tree_within(kTwo, 2, c));
  CHECK(has_tree_within(kTwo, BigNat("123456789012345678901234567890"), c));
  CHECK_FALSE(has_tree_within(parse_formula("{x1 x2}"), BigNat(1000000000), c));
  CHECK_THROWS_AS(has_tree_within(kTwo, BigNat(-1), c), std::invalid_argument);
}

TEST_CASE("budget exhaustion is a distinct outcome") {
  OracleConfig tight = cfg(TreeDiscipline::backtracking());
  tight.node_budget = 3;
  Formula hard = parse_formula(
      "{x1 x2 x3, x1 x2 -x3, x1 -x2 x3, x1 -x2 -x3, -x1 x2 x3, -x1 x2 -x3, "
      "-x1 -x2 x3, -x1 -x2 -x3}");
  CHECK_THROWS_AS(optimal_size(hard, tight), BudgetExhausted);
  OracleConfig roomy = cfg(TreeDiscipline::backtracking());
  roomy.node_budget = 1u << 22;
  CHECK(optimal_size(hard, roomy) == ProofSize::finite(7));
}

TEST_CASE("component decomposition flag preserves results") {
  std::mt19937_64 rng(7205);
  for (int i = 0; i < 80; ++i) {
    // two variable-disjoint halves
    Formula a = random_formula(rng, 3, 2 + rng() % 4, 2);
    Formula b0 = random_formula(rng, 3, 2 + rng() % 4, 2);
    std::vector<Clause> shifted;
    for (const Clause& cl : b0) {
      std::vector<Literal> lits;
      for (Literal l : cl) lits.emplace_back(l.var() + 3, l.positive());
      shifted.emplace_back(std::move(lits));
    }
    std::vector<Clause> all(a.begin(), a.end());
    all.insert(all.end(), shifted.begin(), shifted.end());
    Formula f(all);
    for (auto d : {TreeDiscipline::backtracking(), TreeDiscipline::dpll_mono()}) {
      OracleConfig plain = cfg(d);
      OracleConfig split = cfg(d);
      split.decompose_components = true;
      CAPTURE(to_text(f), d.kind_name());
      CHECK(optimal_size(f, split) == optimal_size(f, plain));
    }
  }
}

TEST_CASE("oracle is deterministic") {
  std::mt19937_64 rng(7206);
  int done = 0;
  while (done < 20) {
    Formula f = random_formula(rng, 4, 4 + rng() % 4, 3);
    if (tt_satisfiable(f)) continue;
    ++done;
    auto c = cfg(TreeDiscipline::backtracking());
    SearchTree t1 = optimal_tree(f, c);
    SearchTree t2 = optimal_tree(f, c);
    CHECK(t1 == t2);
  }
}
