#pragma once
// Seeded law-verification harness: each suite draws reproducible random
// instances, evaluates both sides of one exact identity (or one end-to-end
// decision) through the public oracles, and aggregates a machine-readable
// report.
//
// Determinism contract: the same suite name, sample count, seed and variable
// cap produce a byte-identical serialized report.  Wall-clock time is kept in
// the report struct for callers but deliberately excluded from the serialized
// form.  Failures are sorted by instance fingerprint, so aggregation order
// cannot leak into the output.

#include <chrono>
#include <cstdint>
#include <iomanip>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "optsearch/cnf.hpp"
#include "optsearch/cnf_io.hpp"
#include "optsearch/combine.hpp"
#include "optsearch/oracle.hpp"
#include "optsearch/reductions.hpp"
#include "optsearch/resolution_search.hpp"
#include "optsearch/transforms.hpp"
#include "optsearch/tree.hpp"

namespace optsearch {

struct LawFailure {
  std::uint64_t fingerprint = 0;
  std::string expected;
  std::string actual;

  friend bool operator<(const LawFailure& a, const LawFailure& b) {
    if (a.fingerprint != b.fingerprint) return a.fingerprint < b.fingerprint;
    if (a.expected != b.expected) return a.expected < b.expected;
    return a.actual < b.actual;
  }
};

struct LawSuiteReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::uint64_t samples = 0;
  std::uint64_t max_vars = 0;
  std::uint64_t instances = 0;
  std::vector<LawFailure> failures; // sorted by fingerprint
  std::uint64_t budget_exhaustions = 0;
  double elapsed_seconds = 0.0; // not serialized

  bool passed() const { return failures.empty(); }
};

inline const std::vector<std::string>& law_suite_names() {
  static const std::vector<std::string> names = {
      "union",   "sum",       "product",    "lemma1",  "shield", "cx-size",
      "ex-size", "exact-size", "res-union", "res-gx",  "reductions"};
  return names;
}

namespace detail {

inline std::string hex16(std::uint64_t v) {
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << v;
  return os.str();
}

// Raw engine output reduced by modulo: the mt19937_64 stream is fixed by the
// standard, so draws are identical across platforms.
inline std::uint64_t draw(std::mt19937_64& rng, std::uint64_t n) {
  return n == 0 ? 0 : rng() % n;
}

inline Formula suite_random_formula(std::mt19937_64& rng, std::uint64_t max_var,
                                    std::uint64_t n_clauses,
                                    std::uint64_t max_width) {
  std::vector<Clause> cs;
  cs.reserve(n_clauses);
  for (std::uint64_t i = 0; i < n_clauses; ++i) {
    std::uint64_t w = 1 + draw(rng, max_width);
    std::vector<Literal> lits;
    lits.reserve(w);
    for (std::uint64_t j = 0; j < w; ++j) {
      VarId v = static_cast<VarId>(1 + draw(rng, max_var));
      lits.emplace_back(v, draw(rng, 2) == 0);
    }
    cs.emplace_back(std::move(lits));
  }
  return Formula(std::move(cs));
}

inline Formula suite_random_unsat(std::mt19937_64& rng, std::uint64_t max_var,
                                  std::uint64_t n_clauses,
                                  std::uint64_t max_width) {
  for (int tries = 0; tries < 100000; ++tries) {
    Formula f = suite_random_formula(rng, max_var, n_clauses, max_width);
    if (f.has_empty_clause()) continue; // already refuted: degenerate
    if (!is_satisfiable(f)) return f;
  }
  throw std::logic_error("unsatisfiable sampling failed to converge");
}

inline Formula shift_vars(const Formula& f, VarId offset) {
  std::vector<Clause> out;
  out.reserve(f.size());
  for (const Clause& c : f) {
    std::vector<Literal> lits;
    lits.reserve(c.size());
    for (Literal l : c) lits.emplace_back(l.var() + offset, l.positive());
    out.emplace_back(std::move(lits));
  }
  return Formula(std::move(out));
}

struct SuiteRun {
  std::mt19937_64 rng;
  LawSuiteReport* report = nullptr;

  void fail(const Formula& instance, std::string expected, std::string actual) {
    report->failures.push_back(
        {instance.fingerprint(), std::move(expected), std::move(actual)});
  }
  void check_eq(const Formula& instance, ProofSize expected, ProofSize actual) {
    if (!(expected == actual)) fail(instance, expected.str(), actual.str());
  }
  void check_eq(const Formula& instance, bool expected, bool actual) {
    if (expected != actual)
      fail(instance, expected ? "true" : "false", actual ? "true" : "false");
  }
};

// ---- the three algebraic size laws over disjoint unsatisfiable pairs ------

inline void suite_pair_laws(SuiteRun& run, std::uint64_t samples,
                            std::uint64_t max_vars, int which) {
  const OracleConfig bt;
  const std::uint64_t clauses = 3 * max_vars + 2;
  const std::uint64_t width = std::min<std::uint64_t>(3, max_vars);
  for (std::uint64_t i = 0; i < samples; ++i) {
    Formula f = suite_random_unsat(run.rng, max_vars, clauses, width);
    Formula h =
        shift_vars(suite_random_unsat(run.rng, max_vars, clauses, width),
                   static_cast<VarId>(max_vars));
    std::uint64_t sf = optimal_size(f, bt).value();
    std::uint64_t sh = optimal_size(h, bt).value();
    ++run.report->instances;
    switch (which) {
      case 0: {
        Formula u = union_disjoint(f, h);
        run.check_eq(u, ProofSize::finite(std::min(sf, sh)),
                     optimal_size(u, bt));
        break;
      }
      case 1: {
        FreshAllocator alloc = FreshAllocator::above({&f, &h});
        SumResult s = sum(f, h, alloc);
        run.check_eq(s.formula, ProofSize::finite(sf + sh + 1),
                     optimal_size(s.formula, bt));
        break;
      }
      default: {
        Formula p = product(f, h);
        run.check_eq(p, ProofSize::finite(sf * sh + sf + sh),
                     optimal_size(p, bt));
        break;
      }
    }
  }
}

// ---- discipline bridges ---------------------------------------------------

inline void suite_lemma1(SuiteRun& run, std::uint64_t samples,
                         std::uint64_t max_vars) {
  const OracleConfig bt;
  const OracleConfig dpll = OracleConfig::with(TreeDiscipline::dpll());
  for (std::uint64_t i = 0; i < samples; ++i) {
    Formula f = suite_random_unsat(run.rng, max_vars, 3 * max_vars + 2,
                                   std::min<std::uint64_t>(3, max_vars));
    FreshAllocator alloc = FreshAllocator::above(f);
    TwinWidening w = to_dpll_equivalent(f, alloc);
    ++run.report->instances;
    std::uint64_t sbt = optimal_size(f, bt).value();
    ProofSize simg = optimal_size(w.formula, dpll);
    if (!(simg == ProofSize::finite(sbt))) {
      run.fail(w.formula, std::to_string(sbt), simg.str());
      continue;
    }
    SearchTree img = optimal_tree(w.formula, dpll);
    SearchTree back = lemma1_tree_back(img, w.twin);
    bool ok = validate_tree(f, back, TreeDiscipline::backtracking()) &&
              back.size() == sbt;
    if (!ok)
      run.fail(w.formula, "relabeled tree valid at size " + std::to_string(sbt),
               "relabeled tree " + std::to_string(back.size()) +
                   (validate_tree(f, back, TreeDiscipline::backtracking())
                        ? " (valid)"
                        : " (invalid)"));
  }
}

inline void suite_shield(SuiteRun& run, std::uint64_t samples,
                         std::uint64_t max_vars) {
  const OracleConfig dpll = OracleConfig::with(TreeDiscipline::dpll());
  const OracleConfig mono = OracleConfig::with(TreeDiscipline::dpll_mono());
  for (std::uint64_t i = 0; i < samples; ++i) {
    Formula f = suite_random_unsat(run.rng, max_vars, 3 * max_vars + 2,
                                   std::min<std::uint64_t>(3, max_vars));
    FreshAllocator alloc = FreshAllocator::above(f);
    MonoShield s = mono_shield(f, alloc);
    ++run.report->instances;
    run.check_eq(s.formula, optimal_size(f, mono),
                 optimal_size(s.formula, dpll));
  }
}

// ---- restricted-branching gadget laws -------------------------------------

inline void suite_cx_size(SuiteRun& run, std::uint64_t samples,
                          std::uint64_t max_vars) {
  const OracleConfig mono = OracleConfig::with(TreeDiscipline::dpll_mono());
  const std::uint64_t vars = std::min<std::uint64_t>(max_vars, 4);
  std::uint64_t done = 0;
  while (done < samples) {
    Formula f = suite_random_formula(run.rng, vars, vars + 3, 2);
    if (f.has_empty_clause() || !f.mentions(1) || !f.mentions(2)) continue;
    std::vector<VarId> xs{1, 2};
    std::uint64_t expected = 3; // 2^2 - 1 for the forced complete top
    bool all_finite = true;
    for (int bits = 0; bits < 4 && all_finite; ++bits) {
      Assignment xa;
      xa.bind(1, (bits & 1) != 0);
      xa.bind(2, (bits & 2) != 0);
      ProofSize s = optimal_size(restricted(f, xa), mono);
      if (!s.is_finite())
        all_finite = false;
      else
        expected += s.value();
    }
    if (!all_finite) continue; // a satisfiable residual: no finite law
    ++done;
    ++run.report->instances;
    FreshAllocator alloc = FreshAllocator::above(f);
    SelectorGadget g = c_transform(f, xs, alloc);
    OracleConfig cfg = OracleConfig::with(
        TreeDiscipline::dpll_mono().restricted_to(g.branch_vars));
    run.check_eq(g.formula, ProofSize::finite(expected),
                 optimal_size(g.formula, cfg));
  }
}

inline void suite_ex_size(SuiteRun& run, std::uint64_t samples,
                          std::uint64_t max_vars) {
  const std::uint64_t n = std::min<std::uint64_t>(max_vars, 2);
  std::vector<VarId> xs;
  for (std::uint64_t v = 1; v <= n; ++v) xs.push_back(static_cast<VarId>(v));
  std::uint64_t done = 0;
  while (done < samples) {
    Formula g = suite_random_formula(run.rng, n, 1 + draw(run.rng, 3), n);
    if (g.has_empty_clause()) continue;
    ++done;
    ++run.report->instances;
    std::uint64_t models = count_models(g, xs);
    FreshAllocator alloc = FreshAllocator::above(g);
    for (VarId x : xs) alloc.reserve_id(x);
    CountingGadget e = e_transform(g, xs, alloc);
    OracleConfig cfg = OracleConfig::with(
        TreeDiscipline::dpll_mono().restricted_to(e.branch_vars));
    run.check_eq(e.formula,
                 ProofSize::finite((std::uint64_t{1} << (n + 1)) - 1 +
                                   2 * models),
                 optimal_size(e.formula, cfg));
  }
}

inline void suite_exact_size(SuiteRun& run, std::uint64_t samples,
                             std::uint64_t max_vars) {
  const std::uint64_t m_cap = std::min<std::uint64_t>(12, 2 * max_vars + 4);
  for (std::uint64_t i = 0; i < samples; ++i) {
    std::uint64_t m = 1 + draw(run.rng, m_cap);
    bool plain = draw(run.rng, 2) == 0;
    FreshAllocator alloc;
    TreeDiscipline d =
        plain ? TreeDiscipline::backtracking() : TreeDiscipline::dpll_mono();
    ExactSizeBlock b = exact_size_block(m, d, alloc);
    OracleConfig cfg =
        plain ? OracleConfig()
              : OracleConfig::with(
                    TreeDiscipline::dpll_mono().restricted_to(b.branch_vars));
    ++run.report->instances;
    run.check_eq(b.formula, ProofSize::finite(m), optimal_size(b.formula, cfg));
  }
}

// ---- regular-resolution laws ----------------------------------------------

constexpr std::uint64_t kSuiteResolutionBudget = 5'000'000;

inline void suite_res_union(SuiteRun& run, std::uint64_t samples,
                            std::uint64_t max_vars) {
  const std::uint64_t vars = std::min<std::uint64_t>(max_vars, 3);
  for (std::uint64_t i = 0; i < samples; ++i) {
    Formula f = suite_random_unsat(run.rng, vars, 2 * vars + 2, 2);
    Formula h = shift_vars(suite_random_unsat(run.rng, vars, 2 * vars + 2, 2),
                           static_cast<VarId>(vars));
    Formula u = union_disjoint(f, h);
    ++run.report->instances;
    try {
      ProofSize sf = min_regular_size(f, kSuiteResolutionBudget);
      ProofSize sh = min_regular_size(h, kSuiteResolutionBudget);
      ProofSize su = min_regular_size(u, kSuiteResolutionBudget);
      run.check_eq(u, ProofSize::min(sf, sh), su);
    } catch (const BudgetExhausted&) {
      ++run.report->budget_exhaustions;
    }
  }
}

inline void suite_res_gx(SuiteRun& run, std::uint64_t samples,
                         std::uint64_t max_vars) {
  const std::uint64_t vars = std::min<std::uint64_t>(max_vars, 3);
  std::uint64_t done = 0;
  int dry_spell = 0;
  while (done < samples) {
    Formula f = suite_random_unsat(run.rng, vars, 2 * vars + 2, 2);
    const Clause* gamma = nullptr;
    for (const Clause& c : f) {
      std::vector<Clause> rest;
      for (const Clause& d : f)
        if (!(d == c)) rest.push_back(d);
      if (is_satisfiable(Formula(std::move(rest)))) {
        gamma = &c;
        break;
      }
    }
    if (!gamma) { // every single-clause removal stays unsatisfiable: resample
      if (++dry_spell > 10000)
        throw std::logic_error("guarded-clause sampling failed to converge");
      continue;
    }
    dry_spell = 0;
    FreshAllocator alloc = FreshAllocator::above(f);
    const VarId x = alloc.fresh();
    Formula g = g_transform(f, *gamma, x);
    ++done;
    ++run.report->instances;
    std::size_t leaf_count = g.size();
    bool every_proof_single_step = true;
    bool some_leaf_level = false;
    try {
      enumerate_min_proofs(g, kSuiteResolutionBudget,
                           [&](const ResolutionProof& p) {
                             std::uint64_t hits = 0;
                             bool leaf_level = false;
                             for (const ResolutionStep& s : p.steps())
                               if (s.pivot == x) {
                                 ++hits;
                                 leaf_level = s.left < leaf_count &&
                                              s.right < leaf_count;
                               }
                             if (hits != 1) every_proof_single_step = false;
                             if (hits == 1 && leaf_level)
                               some_leaf_level = true;
                           });
      bool ok = every_proof_single_step && some_leaf_level;
      if (!ok)
        run.fail(g, "one guard-pivot step per proof, some at leaf level",
                 every_proof_single_step ? "no proof resolves the pair at leaf level"
                                         : "a proof uses the guard pivot != once");
    } catch (const BudgetExhausted&) {
      ++run.report->budget_exhaustions;
    }
  }
}

// ---- reduction round-trips ------------------------------------------------

inline std::uint64_t brute_models(const Formula& f,
                                  const std::vector<VarId>& universe) {
  return count_models(f, universe);
}

inline void suite_reductions(SuiteRun& run, std::uint64_t samples,
                             std::uint64_t max_vars) {
  const std::uint64_t vars = std::min<std::uint64_t>(max_vars, 3);
  const OracleConfig mono = OracleConfig::with(TreeDiscipline::dpll_mono());
  for (std::uint64_t i = 0; i < samples; ++i) {
    switch (i % 4) {
      case 0: { // parity of the first refuted entry in a sequence
        std::uint64_t r = 2 + 2 * draw(run.rng, 2);
        std::vector<Formula> seq;
        bool expect = false;
        for (std::uint64_t j = 0; j < r; ++j) {
          Formula part =
              j + 2 >= r ? suite_random_unsat(run.rng, vars, 2 * vars + 2, 2)
                         : suite_random_formula(run.rng, vars, vars + 1, 2);
          seq.push_back(
              shift_vars(part, static_cast<VarId>(j * (vars + 1))));
        }
        for (std::uint64_t j = 0; j < r; ++j)
          if (!is_satisfiable(seq[j])) {
            expect = (j % 2) == 0; // 1-based index j+1 is odd
            break;
          }
        FreshAllocator alloc(static_cast<VarId>(r * (vars + 1) + 1));
        ReductionOutput out =
            reduce_parity_sat(seq, TreeDiscipline::backtracking(), alloc);
        OracleConfig cfg = OracleConfig::with(out.discipline);
        cfg.decompose_components = true;
        ++run.report->instances;
        run.check_eq(out.formula, expect,
                     is_optimal_branch_var(out.formula, *out.distinguished,
                                           cfg));
        break;
      }
      case 1: { // size-bound decision mirrors unsatisfiability
        Formula g = suite_random_formula(run.rng, vars, vars + 1, 2);
        if (g.has_empty_clause()) g = Formula{Clause{pos(1)}, Clause{neg(1)}};
        FreshAllocator alloc = FreshAllocator::above(g);
        ReductionOutput out =
            reduce_ots_conp(g, TreeDiscipline::backtracking(), alloc);
        OracleConfig cfg = OracleConfig::with(out.discipline);
        cfg.decompose_components = true;
        ++run.report->instances;
        run.check_eq(out.formula, !is_satisfiable(g),
                     has_tree_within(out.formula, *out.bound, cfg));
        break;
      }
      case 2: { // branching-variable decision mirrors the size threshold
        Formula g = suite_random_formula(run.rng, vars, vars + 1, 2);
        if (g.has_empty_clause()) g = Formula{Clause{pos(1)}, Clause{neg(1)}};
        ProofSize s = optimal_size(g, mono);
        std::uint64_t k =
            s.is_finite() ? (s.value() > 0 ? s.value() - 1 + draw(run.rng, 3)
                                           : s.value() + draw(run.rng, 2))
                          : draw(run.rng, 3);
        bool expect = s.is_finite() && s.value() <= k;
        FreshAllocator alloc = FreshAllocator::above(g);
        ReductionOutput out = reduce_ots_to_obv(g, k, alloc);
        OracleConfig cfg = OracleConfig::with(out.discipline);
        cfg.decompose_components = true;
        ++run.report->instances;
        run.check_eq(out.formula, expect,
                     is_optimal_branch_var(out.formula, *out.distinguished,
                                           cfg));
        break;
      }
      default: { // model-count threshold over a single (x, y) split
        Formula f = suite_random_formula(run.rng, 2, 1 + draw(run.rng, 3), 2);
        if (f.has_empty_clause()) f = Formula{Clause{pos(1), pos(2)}};
        bool expect = false;
        for (int bit = 0; bit < 2; ++bit) {
          Assignment xa;
          xa.bind(1, bit != 0);
          if (brute_models(restricted(f, xa), {2}) <= 1) expect = true;
        }
        FreshAllocator alloc(3);
        ReductionOutput out = reduce_eminsat(f, {1}, {2}, alloc);
        OracleConfig cfg = OracleConfig::with(out.discipline);
        cfg.decompose_components = true;
        ++run.report->instances;
        run.check_eq(out.formula, expect,
                     has_tree_within(out.formula, *out.bound, cfg));
        break;
      }
    }
  }
}

} // namespace detail

inline LawSuiteReport run_law_suite(const std::string& suite,
                                    std::uint64_t samples, std::uint64_t seed,
                                    std::uint64_t max_vars) {
  if (max_vars < 2)
    throw std::invalid_argument("law suites need a variable cap of at least 2");
  LawSuiteReport report;
  report.suite = suite;
  report.seed = seed;
  report.samples = samples;
  report.max_vars = max_vars;
  detail::SuiteRun run{std::mt19937_64(seed), &report};
  auto t0 = std::chrono::steady_clock::now();
  if (suite == "union")
    detail::suite_pair_laws(run, samples, max_vars, 0);
  else if (suite == "sum")
    detail::suite_pair_laws(run, samples, max_vars, 1);
  else if (suite == "product")
    detail::suite_pair_laws(run, samples, max_vars, 2);
  else if (suite == "lemma1")
    detail::suite_lemma1(run, samples, max_vars);
  else if (suite == "shield")
    detail::suite_shield(run, samples, max_vars);
  else if (suite == "cx-size")
    detail::suite_cx_size(run, samples, max_vars);
  else if (suite == "ex-size")
    detail::suite_ex_size(run, samples, max_vars);
  else if (suite == "exact-size")
    detail::suite_exact_size(run, samples, max_vars);
  else if (suite == "res-union")
    detail::suite_res_union(run, samples, max_vars);
  else if (suite == "res-gx")
    detail::suite_res_gx(run, samples, max_vars);
  else if (suite == "reductions")
    detail::suite_reductions(run, samples, max_vars);
  else
    throw std::invalid_argument("unknown law suite: " + suite);
  report.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  std::sort(report.failures.begin(), report.failures.end());
  return report;
}

inline std::string serialize_report(const LawSuiteReport& r) {
  std::ostringstream os;
  os << "suite: " << r.suite << '\n';
  os << "seed: " << r.seed << '\n';
  os << "samples: " << r.samples << '\n';
  os << "max-vars: " << r.max_vars << '\n';
  os << "instances: " << r.instances << '\n';
  os << "budget-exhaustions: " << r.budget_exhaustions << '\n';
  os << "failures: " << r.failures.size() << '\n';
  for (const LawFailure& f : r.failures)
    os << "failure: " << detail::hex16(f.fingerprint)
       << " expected=" << f.expected << " actual=" << f.actual << '\n';
  os << "status: " << (r.passed() ? "PASS" : "FAIL") << '\n';
  return os.str();
}

// ---------------------------------------------------------------------------
// Exploratory resolution checks.  Whether the sum/product size laws carry
// over to minimum regular-refutation size is an open question; these tallies
// report observed relations on tiny samples and carry no pass/fail meaning.

struct ExploratoryReport {
  std::string name;
  std::uint64_t seed = 0;
  std::uint64_t samples = 0;
  std::uint64_t instances = 0;
  std::uint64_t lhs_smaller = 0; // observed: combined < composed formula law
  std::uint64_t equal = 0;
  std::uint64_t lhs_larger = 0;
  std::uint64_t budget_exhaustions = 0;
};

inline ExploratoryReport run_exploratory_suite(const std::string& name,
                                               std::uint64_t samples,
                                               std::uint64_t seed) {
  if (name != "sum" && name != "product")
    throw std::invalid_argument("unknown exploratory check: " + name);
  ExploratoryReport rep;
  rep.name = "res-" + name;
  rep.seed = seed;
  rep.samples = samples;
  std::mt19937_64 rng(seed);
  for (std::uint64_t i = 0; i < samples; ++i) {
    Formula f = detail::suite_random_unsat(rng, 2, 5, 2);
    Formula h = detail::shift_vars(detail::suite_random_unsat(rng, 2, 5, 2), 2);
    try {
      std::uint64_t sf =
          min_regular_size(f, detail::kSuiteResolutionBudget).value();
      std::uint64_t sh =
          min_regular_size(h, detail::kSuiteResolutionBudget).value();
      Formula combined;
      std::uint64_t rhs = 0;
      if (name == "sum") {
        FreshAllocator alloc = FreshAllocator::above({&f, &h});
        combined = sum(f, h, alloc).formula;
        rhs = sf + sh + 1;
      } else {
        combined = product(f, h);
        rhs = sf * sh + sf + sh;
      }
      std::uint64_t lhs =
          min_regular_size(combined, detail::kSuiteResolutionBudget).value();
      ++rep.instances;
      if (lhs < rhs)
        ++rep.lhs_smaller;
      else if (lhs == rhs)
        ++rep.equal;
      else
        ++rep.lhs_larger;
    } catch (const BudgetExhausted&) {
      ++rep.budget_exhaustions;
    }
  }
  return rep;
}

inline std::string serialize_report(const ExploratoryReport& r) {
  std::ostringstream os;
  os << "exploration: " << r.name << '\n';
  os << "seed: " << r.seed << '\n';
  os << "samples: " << r.samples << '\n';
  os << "instances: " << r.instances << '\n';
  os << "budget-exhaustions: " << r.budget_exhaustions << '\n';
  os << "observed-smaller: " << r.lhs_smaller << '\n';
  os << "observed-equal: " << r.equal << '\n';
  os << "observed-larger: " << r.lhs_larger << '\n';
  os << "note: exploratory tally; carries no pass/fail meaning\n";
  return os.str();
}

} // namespace optsearch
