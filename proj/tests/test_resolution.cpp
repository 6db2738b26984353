#include <catch2/catch_amalgamated.hpp>

#include <cstdint>
#include <sstream>
#include <vector>

#include "helpers.hpp"
#include "optsearch/families.hpp"
#include "optsearch/oracle.hpp"
#include "optsearch/resolution.hpp"
#include "optsearch/resolution_search.hpp"

using namespace optsearch;
using namespace testutil;

namespace {

const Formula kComplementaryUnits{Clause{pos(1)}, Clause{neg(1)}};

Formula two_var_block() {
  // the four full-width clauses over x=1, y=2
  return Formula{Clause{pos(1), pos(2)}, Clause{pos(1), neg(2)},
                 Clause{neg(1), pos(2)}, Clause{neg(1), neg(2)}};
}

std::size_t leaf_index(const Formula& f, const Clause& c) {
  std::size_t i = 0;
  for (const Clause& x : f) {
    if (x == c) return i;
    ++i;
  }
  throw std::logic_error("clause not in formula");
}

bool same_proof(const ResolutionProof& a, const ResolutionProof& b) {
  if (a.leaves() != b.leaves() || a.root() != b.root() ||
      a.steps().size() != b.steps().size())
    return false;
  for (std::size_t i = 0; i < a.steps().size(); ++i) {
    const ResolutionStep &s = a.steps()[i], &t = b.steps()[i];
    if (s.pivot != t.pivot || s.left != t.left || s.right != t.right ||
        !(s.resolvent == t.resolvent))
      return false;
  }
  return true;
}

std::uint64_t steps_with_pivot(const ResolutionProof& p, VarId x) {
  std::uint64_t n = 0;
  for (const ResolutionStep& s : p.steps())
    if (s.pivot == x) ++n;
  return n;
}

} // namespace

TEST_CASE("the resolvent keeps everything except the clashing pair") {
  const VarId x = 1, y = 2, z = 3;
  CHECK(resolve(Clause{pos(x), pos(y)}, Clause{neg(x), pos(z)}, x) ==
        Clause{pos(y), pos(z)});
  CHECK(resolve(Clause{pos(x)}, Clause{neg(x)}, x) == Clause());
  // a tautological resolvent is legal
  CHECK(resolve(Clause{pos(x), pos(y)}, Clause{neg(x), neg(y)}, x) ==
        Clause{pos(y), neg(y)});
  // argument order does not matter
  CHECK(resolve(Clause{neg(x), pos(z)}, Clause{pos(x), pos(y)}, x) ==
        Clause{pos(y), pos(z)});
  CHECK_THROWS_AS(resolve(Clause{pos(x)}, Clause{pos(y)}, x),
                  std::invalid_argument);
  CHECK_THROWS_AS(resolve(Clause{pos(x)}, Clause{pos(x), pos(y)}, x),
                  std::invalid_argument);
}

TEST_CASE("the validator accepts hand-built regular proofs") {
  SECTION("one step refutes a complementary unit pair") {
    const Formula f = kComplementaryUnits;
    ResolutionStep s;
    s.pivot = 1;
    s.left = 0;
    s.right = 1;
    s.resolvent = Clause();
    ResolutionProof p({Clause{pos(1)}, Clause{neg(1)}}, {s}, 2);
    CHECK(validate_regular_proof(f, p));
    CHECK(p.size() == 1);
  }
  SECTION("three steps refute the two-variable block, pivots y, y, x") {
    const Formula f = two_var_block();
    std::vector<Clause> leaves(f.begin(), f.end());
    std::vector<ResolutionStep> steps(3);
    steps[0] = {2, 0, 1, Clause{pos(1)}};
    steps[1] = {2, 2, 3, Clause{neg(1)}};
    steps[2] = {1, 4, 5, Clause()};
    ResolutionProof p(leaves, steps, 6);
    CHECK(validate_regular_proof(f, p));
  }
}

TEST_CASE("the validator rejects broken proofs") {
  const Formula f = two_var_block();
  std::vector<Clause> leaves(f.begin(), f.end());

  SECTION("a repeated pivot on one path fails the regularity check") {
    // x, then y, then x again on the path from the root to the first leaf
    std::vector<ResolutionStep> steps(4);
    steps[0] = {1, 0, 2, Clause{pos(2)}};              // {y}
    steps[1] = {2, 4, 1, Clause{pos(1)}};              // {x}
    steps[2] = {1, 5, 3, Clause{neg(2)}};              // {¬y}
    steps[3] = {2, 6, 4, Clause()};                    // ⊥
    ResolutionProof p(leaves, steps, 7);
    CHECK_FALSE(validate_regular_proof(f, p));
  }
  SECTION("a wrong resolvent fails") {
    std::vector<ResolutionStep> steps(1);
    steps[0] = {2, 0, 1, Clause{pos(1), pos(2)}};
    CHECK_FALSE(validate_regular_proof(f, ResolutionProof(leaves, steps, 4)));
  }
  SECTION("a non-empty root fails") {
    std::vector<ResolutionStep> steps(1);
    steps[0] = {2, 0, 1, Clause{pos(1)}};
    CHECK_FALSE(validate_regular_proof(f, ResolutionProof(leaves, steps, 4)));
  }
  SECTION("a leaf outside the formula fails") {
    ResolutionStep s;
    s.pivot = 1;
    s.left = 0;
    s.right = 1;
    s.resolvent = Clause();
    ResolutionProof p({Clause{pos(1)}, Clause{neg(1)}}, {s}, 2);
    CHECK_FALSE(validate_regular_proof(two_var_block(), p));
  }
}

TEST_CASE("proofs with an unused tautological step still validate") {
  // Tautologies are permitted in proofs; they just cannot lie on a
  // root-to-leaf path of a regular one, so a minimum proof never needs them.
  const Formula f = two_var_block();
  std::vector<Clause> leaves(f.begin(), f.end());
  std::vector<ResolutionStep> steps(4);
  steps[0] = {1, 0, 3, Clause{pos(2), neg(2)}}; // unused tautology
  steps[1] = {2, 0, 1, Clause{pos(1)}};
  steps[2] = {2, 2, 3, Clause{neg(1)}};
  steps[3] = {1, 5, 6, Clause()};
  ResolutionProof p(leaves, steps, 7);
  CHECK(validate_regular_proof(f, p));
  CHECK(p.size() == 4);
  // ... and the exact search beats it, confirming the tautology prune does
  // not cut the optimum.
  CHECK(min_regular_size(f, 0) == ProofSize::finite(3));
}

TEST_CASE("proof traces round-trip through the text format") {
  MinProofResult r = min_regular_proof(two_var_block(), 0);
  REQUIRE(r.witness.has_value());
  const std::string text = proof_trace(*r.witness);
  ResolutionProof back = parse_proof_trace(text);
  CHECK(same_proof(*r.witness, back));
  CHECK(validate_regular_proof(two_var_block(), back));

  SECTION("malformed traces are rejected") {
    CHECK_THROWS_AS(parse_proof_trace("leaf zero 0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_proof_trace("leaf 0 1 0\n"), std::invalid_argument);
    std::istringstream empty("");
    CHECK_THROWS_AS(read_proof_trace(empty), std::invalid_argument);
  }
}

TEST_CASE("DOT export names every proof node") {
  MinProofResult r = min_regular_proof(kComplementaryUnits, 0);
  REQUIRE(r.witness.has_value());
  const std::string dot = proof_to_dot(*r.witness);
  CHECK(dot.find("digraph") != std::string::npos);
  CHECK(dot.find("n0") != std::string::npos);
  CHECK(dot.find("n2") != std::string::npos);
}

TEST_CASE("minimum regular proof sizes on anchor formulas") {
  CHECK(min_regular_size(kComplementaryUnits, 0) == ProofSize::finite(1));
  CHECK(min_regular_size(two_var_block(), 0) == ProofSize::finite(3));
  CHECK(min_regular_size(Formula{Clause{pos(1), pos(2)}}, 0) ==
        ProofSize::infinite());
  CHECK(min_regular_size(Formula{Clause()}, 0) == ProofSize::finite(0));
}

TEST_CASE("the witness of the minimum search always validates") {
  std::mt19937_64 rng(0xA11CE);
  for (int i = 0; i < 12; ++i) {
    Formula f = random_unsat(rng, 3, 5, 2);
    MinProofResult r = min_regular_proof(f, 0);
    REQUIRE(r.size.is_finite());
    REQUIRE(r.witness.has_value());
    CHECK(validate_regular_proof(f, *r.witness));
    CHECK(r.witness->size() == r.size.value());
  }
  // the zero-step witness for a formula already containing ⊥
  MinProofResult r = min_regular_proof(Formula{Clause(), Clause{pos(7)}}, 0);
  CHECK(r.size == ProofSize::finite(0));
  REQUIRE(r.witness.has_value());
  CHECK(validate_regular_proof(Formula{Clause(), Clause{pos(7)}}, *r.witness));
}

TEST_CASE("an exhausted step budget raises instead of answering") {
  CHECK_THROWS_AS(min_regular_size(two_var_block(), 2), BudgetExhausted);
  // a budget large enough to finish changes nothing
  CHECK(min_regular_size(two_var_block(), 100000) == ProofSize::finite(3));
}

TEST_CASE("a minimum proof of a disjoint union stays in one part") {
  std::mt19937_64 rng(0xD15C0);
  for (int i = 0; i < 10; ++i) {
    Formula f = random_unsat(rng, 3, 5, 2);
    Formula h = shift_vars(random_unsat(rng, 3, 5, 2), 10);
    ProofSize sf = min_regular_size(f, 0);
    ProofSize sh = min_regular_size(h, 0);
    ProofSize su = min_regular_size(union_disjoint(f, h), 0);
    CHECK(su == ProofSize::min(sf, sh));
  }
}

TEST_CASE("a backtracking tree simulates as a regular proof of equal or "
          "smaller size") {
  std::mt19937_64 rng(0x7EE5);
  const OracleConfig cfg = OracleConfig::with(TreeDiscipline::backtracking());
  for (int i = 0; i < 15; ++i) {
    Formula f = random_unsat(rng, 4, 6, 2);
    SearchTree t = optimal_tree(f, cfg);
    ResolutionProof p = tree_to_resolution(f, t);
    CHECK(validate_regular_proof(f, p));
    CHECK(p.size() <= t.size());
    ProofSize s = optimal_size(f, cfg);
    if (s.value() <= 5)
      CHECK(min_regular_size(f, 0).value() <= s.value());
  }
  SECTION("a satisfiable formula has no valid tree to simulate") {
    CHECK_THROWS_AS(
        tree_to_resolution(Formula{Clause{pos(1)}}, SearchTree(1, {}, {})),
        std::invalid_argument);
  }
}

TEST_CASE("guarding one clause behind a fresh unit") {
  const Formula f = kComplementaryUnits; // {p, ¬p}
  const Clause gamma{pos(1)};
  SECTION("the guarded formula and its minimum size") {
    Formula g = g_transform(f, gamma, 2);
    CHECK(g == Formula{Clause{neg(1)}, Clause{pos(2)}, Clause{neg(2), pos(1)}});
    CHECK(min_regular_size(g, 0) == ProofSize::finite(2));
  }
  SECTION("every minimum proof eliminates the guard exactly once, and some "
          "proof resolves the guard pair at the leaves") {
    Formula g = g_transform(f, gamma, 2);
    const std::size_t ui = leaf_index(g, Clause{pos(2)});
    const std::size_t gi = leaf_index(g, Clause{neg(2), pos(1)});
    bool leaf_level = false;
    std::uint64_t visits = enumerate_min_proofs(g, 0, [&](const ResolutionProof& p) {
      CHECK(steps_with_pivot(p, 2) == 1);
      for (const ResolutionStep& s : p.steps())
        if ((s.left == ui && s.right == gi) || (s.left == gi && s.right == ui))
          leaf_level = true;
    });
    CHECK(visits > 0);
    CHECK(leaf_level);
  }
  SECTION("guarding a block clause") {
    Formula g = g_transform(two_var_block(), Clause{pos(1), pos(2)}, 3);
    CHECK(min_regular_size(g, 0) == ProofSize::finite(4));
    enumerate_min_proofs(g, 0, [&](const ResolutionProof& p) {
      CHECK(steps_with_pivot(p, 3) == 1);
    });
  }
  SECTION("preconditions") {
    CHECK_THROWS_AS(g_transform(f, Clause{pos(9)}, 2), std::invalid_argument);
    CHECK_THROWS_AS(g_transform(f, gamma, 1), std::invalid_argument);
    CHECK_THROWS_AS(g_transform(Formula{Clause{pos(1)}}, Clause{pos(1)}, 2),
                    std::invalid_argument);
    // removing the clause must leave something satisfiable
    Formula still_unsat{Clause{pos(1)}, Clause{neg(1)}, Clause{pos(2)}};
    CHECK_THROWS_AS(g_transform(still_unsat, Clause{pos(2)}, 3),
                    std::invalid_argument);
  }
}

TEST_CASE("guarding every clause behind a fresh unit chain") {
  SECTION("complementary units grow by two steps") {
    Formula f = f_transform(kComplementaryUnits, 2, 3);
    CHECK(f == Formula{Clause{pos(2)}, Clause{neg(2), pos(3)},
                       Clause{neg(3), pos(1)}, Clause{neg(3), neg(1)}});
    CHECK(min_regular_size(f, 0) == ProofSize::finite(3));
  }
  SECTION("the already-refuted formula gives the two-step chain") {
    Formula f = f_transform(Formula{Clause()}, 1, 2);
    CHECK(f == Formula{Clause{pos(1)}, Clause{neg(1), pos(2)}, Clause{neg(2)}});
    CHECK(min_regular_size(f, 0) == ProofSize::finite(2));
  }
  SECTION("preconditions") {
    CHECK_THROWS_AS(f_transform(Formula{Clause{pos(1)}}, 2, 3),
                    std::invalid_argument);
    CHECK_THROWS_AS(f_transform(kComplementaryUnits, 2, 2),
                    std::invalid_argument);
    CHECK_THROWS_AS(f_transform(kComplementaryUnits, 1, 2),
                    std::invalid_argument);
  }
}

TEST_CASE("pushing the guard resolution to the leaves") {
  SECTION("a leaf-level proof is a fixpoint") {
    Formula g = g_transform(kComplementaryUnits, Clause{pos(1)}, 2);
    MinProofResult r = min_regular_proof(g, 0);
    REQUIRE(r.witness.has_value());
    ResolutionProof q = push_pivot_to_leaves(*r.witness, 2);
    CHECK(validate_regular_proof(g, q));
    CHECK(q.size() <= r.witness->size());
    CHECK(steps_with_pivot(q, 2) == 1);
    ResolutionProof q2 = push_pivot_to_leaves(q, 2);
    CHECK(same_proof(q, q2));
  }
  SECTION("two guard resolutions collapse into one, shrinking the proof") {
    // hand-built proof of {x, ¬x∨y, ¬y∨p, ¬y∨¬p} with two x-resolutions
    Formula f = f_transform(kComplementaryUnits, 2, 3); // x=2, y=3, p=1
    std::vector<Clause> leaves(f.begin(), f.end());
    const std::size_t lx = leaf_index(f, Clause{pos(2)});
    const std::size_t lxy = leaf_index(f, Clause{neg(2), pos(3)});
    const std::size_t lyp = leaf_index(f, Clause{neg(3), pos(1)});
    const std::size_t lyn = leaf_index(f, Clause{neg(3), neg(1)});
    std::vector<ResolutionStep> steps(5);
    steps[0] = {3, lxy, lyp, Clause{neg(2), pos(1)}};
    steps[1] = {3, lxy, lyn, Clause{neg(2), neg(1)}};
    steps[2] = {2, lx, 4, Clause{pos(1)}};
    steps[3] = {2, lx, 5, Clause{neg(1)}};
    steps[4] = {1, 6, 7, Clause()};
    ResolutionProof p(leaves, steps, 8);
    REQUIRE(validate_regular_proof(f, p));
    REQUIRE(steps_with_pivot(p, 2) == 2);

    ResolutionProof q = push_pivot_to_leaves(p, 2);
    CHECK(validate_regular_proof(f, q));
    CHECK(q.size() == 4);
    CHECK(q.size() < p.size());
    CHECK(steps_with_pivot(q, 2) == 1);
  }
  SECTION("a proof that never touches the variable is rejected") {
    Formula f{Clause{pos(2)}, Clause{neg(2), pos(1)}, Clause{pos(1)},
              Clause{neg(1)}};
    std::vector<Clause> leaves(f.begin(), f.end());
    ResolutionStep s;
    s.pivot = 1;
    s.left = leaf_index(f, Clause{pos(1)});
    s.right = leaf_index(f, Clause{neg(1)});
    s.resolvent = Clause();
    ResolutionProof p(leaves, {s}, leaves.size());
    REQUIRE(validate_regular_proof(f, p));
    CHECK_THROWS_AS(push_pivot_to_leaves(p, 2), std::invalid_argument);
  }
}

TEST_CASE("the optimal-pair decision on anchor inputs") {
  SECTION("the only proof of a complementary pair uses it") {
    CHECK(is_optimal_resolution_pair(kComplementaryUnits, Clause{pos(1)},
                                     Clause{neg(1)}, 0));
  }
  SECTION("the guard pair of a guarded formula is optimal") {
    Formula g = g_transform(kComplementaryUnits, Clause{pos(1)}, 2);
    CHECK(is_optimal_resolution_pair(g, Clause{pos(2)},
                                     Clause{neg(2), pos(1)}, 0));
  }
  SECTION("non-members and non-clashing pairs are rejected") {
    CHECK_THROWS_AS(is_optimal_resolution_pair(kComplementaryUnits,
                                               Clause{pos(1)}, Clause{pos(9)},
                                               0),
                    std::invalid_argument);
    Formula f = two_var_block();
    CHECK_THROWS_AS(is_optimal_resolution_pair(f, Clause{pos(1), pos(2)},
                                               Clause{neg(1), neg(2)}, 0),
                    std::invalid_argument);
  }
  SECTION("never true for a satisfiable or already-refuted formula") {
    Formula sat{Clause{pos(1)}, Clause{neg(1), pos(2)}};
    CHECK_FALSE(
        is_optimal_resolution_pair(sat, Clause{pos(1)}, Clause{neg(1), pos(2)}, 0));
    Formula refuted{Clause(), Clause{pos(1)}, Clause{neg(1)}};
    CHECK_FALSE(is_optimal_resolution_pair(refuted, Clause{pos(1)},
                                           Clause{neg(1)}, 0));
  }
}

TEST_CASE("the pair reduction points at the unsatisfiable side") {
  auto pair_clauses = [](const ReductionOutput& out, const std::string& role) {
    const std::vector<VarId>& vs = out.roles.at(role);
    return std::pair<Clause, Clause>(Clause{pos(vs[0])},
                                     Clause{neg(vs[0]), pos(vs[1])});
  };
  SECTION("an unsatisfiable input selects the first pair") {
    FreshAllocator alloc = FreshAllocator::above(kComplementaryUnits);
    ReductionOutput out = reduce_orp(kComplementaryUnits, alloc, 2);
    auto [g1, g2] = pair_clauses(out, "first_pair");
    CHECK(is_optimal_resolution_pair(out.formula, g1, g2, 0));
  }
  SECTION("an already-refuted input selects the first pair") {
    FreshAllocator alloc(1);
    ReductionOutput out = reduce_orp(Formula{Clause()}, alloc, 2);
    auto [g1, g2] = pair_clauses(out, "first_pair");
    CHECK(is_optimal_resolution_pair(out.formula, g1, g2, 0));
  }
  SECTION("a satisfiable input selects the second pair instead") {
    Formula f{Clause{pos(1), pos(2)}};
    FreshAllocator alloc = FreshAllocator::above(f);
    ReductionOutput out = reduce_orp(f, alloc, 2);
    auto [g1, g2] = pair_clauses(out, "first_pair");
    auto [h1, h2] = pair_clauses(out, "second_pair");
    CHECK_FALSE(is_optimal_resolution_pair(out.formula, g1, g2, 0));
    CHECK(is_optimal_resolution_pair(out.formula, h1, h2, 0));
  }
  SECTION("an oversized threshold is rejected") {
    FreshAllocator alloc(1);
    CHECK_THROWS_AS(reduce_orp(kComplementaryUnits, alloc, 7),
                    std::invalid_argument);
  }
}
