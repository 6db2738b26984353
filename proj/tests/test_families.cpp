#include <catch2/catch_amalgamated.hpp>

#include <stdexcept>

#include "helpers.hpp"
#include "optsearch/cnf.hpp"
#include "optsearch/combine.hpp"
#include "optsearch/families.hpp"
#include "optsearch/oracle.hpp"

using namespace optsearch;
using testutil::naive_optimal_size;
using testutil::tt_satisfiable;

namespace {
const OracleConfig kBt = OracleConfig::with(TreeDiscipline::backtracking());
const OracleConfig kMono = OracleConfig::with(TreeDiscipline::dpll_mono());

std::uint64_t bt_size(const Formula& f) {
  ProofSize s = optimal_size(f, kBt);
  REQUIRE(s.is_finite());
  return s.value();
}
} // namespace

TEST_CASE("pigeonhole: two pigeons one hole") {
  FreshAllocator alloc;
  Formula f = pigeonhole_formula(1, alloc);
  CHECK(f == Formula({Clause({pos(1)}), Clause({pos(2)}),
                      Clause({neg(1), neg(2)})}));
  CHECK_FALSE(tt_satisfiable(f));
  CHECK(bt_size(f) == 2);
}

TEST_CASE("pigeonhole: three pigeons two holes") {
  FreshAllocator alloc;
  Formula f = pigeonhole_formula(2, alloc);
  CHECK(f.variables().size() == 6);
  CHECK(f.size() == 3 + 2 * 3); // placement rows + exclusion pairs
  CHECK_FALSE(tt_satisfiable(f));
  ProofSize s = optimal_size(f, kBt);
  CHECK(s == naive_optimal_size(f, TreeDiscipline::backtracking()));
}

TEST_CASE("parity contradiction over the two-vertex complete graph") {
  FreshAllocator alloc;
  Formula f = tseitin_complete_formula(2, alloc);
  CHECK(f == Formula({Clause({pos(1)}), Clause({neg(1)})}));
  CHECK(bt_size(f) == 1);
}

TEST_CASE("parity contradiction over the triangle") {
  FreshAllocator alloc;
  Formula f = tseitin_complete_formula(3, alloc);
  CHECK(f.variables().size() == 3);
  CHECK(f.size() == 6); // two blocked assignments per vertex
  CHECK_FALSE(tt_satisfiable(f));
  ProofSize s = optimal_size(f, kBt);
  CHECK(s == naive_optimal_size(f, TreeDiscipline::backtracking()));
  CHECK(optimal_size(f, kMono) ==
        naive_optimal_size(f, TreeDiscipline::dpll_mono()));
}

TEST_CASE("parity contradiction over the four-vertex complete graph") {
  FreshAllocator alloc;
  Formula f = tseitin_complete_formula(4, alloc);
  CHECK(f.variables().size() == 6);
  CHECK(f.size() == 4 * 4);
  CHECK_FALSE(tt_satisfiable(f));
  CHECK(optimal_size(f, kBt).is_finite());
}

TEST_CASE("full clause block: four clauses over two variables") {
  FreshAllocator alloc;
  Formula f = complete_block_formula(2, alloc);
  CHECK(f == Formula({Clause({pos(1), pos(2)}), Clause({pos(1), neg(2)}),
                      Clause({neg(1), pos(2)}), Clause({neg(1), neg(2)})}));
  CHECK(bt_size(f) == 3);
}

TEST_CASE("full clause block needs a complete tree without closure") {
  for (std::uint64_t n = 1; n <= 4; ++n) {
    FreshAllocator alloc;
    Formula f = complete_block_formula(n, alloc);
    CHECK(f.size() == (std::uint64_t{1} << n));
    CHECK_FALSE(tt_satisfiable(f));
    CHECK(bt_size(f) == (std::uint64_t{1} << n) - 1);
  }
}

TEST_CASE("full clause block halves under unit closure") {
  // branching any variable turns the other full clauses into a smaller block;
  // once clauses become units, propagation finishes the job
  FreshAllocator alloc;
  Formula f = complete_block_formula(3, alloc);
  ProofSize s = optimal_size(f, kMono);
  REQUIRE(s.is_finite());
  CHECK(s.value() == 3); // 2^{3-1} - 1
  CHECK(s == naive_optimal_size(f, TreeDiscipline::dpll_mono()));
}

TEST_CASE("family dispatcher and parameter validation") {
  FreshAllocator alloc;
  CHECK(hard_family(HardFamilyKind::PigeonHole, 1, alloc).size() == 3);
  CHECK(hard_family(HardFamilyKind::CompleteBlock, 2, alloc).size() == 4);
  CHECK(hard_family(HardFamilyKind::TseitinComplete, 2, alloc).size() == 2);
  CHECK_THROWS_AS(hard_family(HardFamilyKind::PigeonHole, 0, alloc),
                  std::invalid_argument);
  CHECK_THROWS_AS(hard_family(HardFamilyKind::TseitinComplete, 1, alloc),
                  std::invalid_argument);
}

TEST_CASE("families are deterministic") {
  FreshAllocator a1, a2;
  CHECK(pigeonhole_formula(2, a1).fingerprint() ==
        pigeonhole_formula(2, a2).fingerprint());
  FreshAllocator b1, b2;
  CHECK(tseitin_complete_formula(4, b1).fingerprint() ==
        tseitin_complete_formula(4, b2).fingerprint());
}
