// optsearch: a desk-scale laboratory for optimal proof search on CNF
// formulas.  Subcommands generate hard families, combine and transform
// formulas, measure optimal search-tree sizes and minimum regular-resolution
// refutations, build decision-problem reductions, run seeded law-verification
// suites, and export DOT drawings.
//
// Formula files are DIMACS CNF ("-" = stdin/stdout).  Constructions with
// metadata (distinguished variable, size bound, variable roles, branching
// restriction) write a JSON sidecar next to the output file, or wherever
// --sidecar points.  Search trees use the parenthetic text form
// "(x1 () (x2 () ()))"; resolution proofs use the line-based trace form with
// leaf/step/root records.
//
// Exit codes: 0 success (including a printed decision of "false"),
// 1 failed verification (law-suite failure, invalid proof), 2 bad usage or
// malformed input, 3 search budget exhausted.  OPTSEARCH_BUDGET supplies a
// default node/step budget when --budget is absent.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "optsearch/cnf.hpp"
#include "optsearch/cnf_io.hpp"
#include "optsearch/combine.hpp"
#include "optsearch/families.hpp"
#include "optsearch/lawsuite.hpp"
#include "optsearch/oracle.hpp"
#include "optsearch/reductions.hpp"
#include "optsearch/resolution.hpp"
#include "optsearch/resolution_search.hpp"
#include "optsearch/transforms.hpp"
#include "optsearch/tree.hpp"

namespace {

using namespace optsearch;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;

std::string read_file(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Formula load_cnf(const std::string& path) {
  return read_dimacs(read_file(path));
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

// Sidecar placement: --sidecar wins; otherwise FILE.json next to -o FILE;
// metadata is dropped when both the output and the sidecar go to stdout.
void emit_with_sidecar(const std::string& out_path,
                       const std::string& sidecar_path, const Formula& f,
                       const json& meta) {
  write_output(out_path, to_dimacs(f));
  std::string target = sidecar_path;
  if (target.empty() && !out_path.empty() && out_path != "-")
    target = out_path + ".json";
  if (target.empty()) return;
  write_output(target, meta.dump(2) + "\n");
}

json discipline_json(const TreeDiscipline& d) {
  json j;
  j["kind"] = d.kind_name();
  j["allowed"] = d.allowed ? json(*d.allowed) : json(nullptr);
  return j;
}

json reduction_json(const std::string& which, const ReductionOutput& out) {
  json j;
  j["operation"] = "reduce-" + which;
  j["discipline"] = discipline_json(out.discipline);
  j["distinguished"] =
      out.distinguished ? json(*out.distinguished) : json(nullptr);
  j["bound"] = out.bound ? json(out.bound->str()) : json(nullptr);
  j["expected"] = out.expected_semantics;
  j["roles"] = out.roles;
  return j;
}

json twin_json(const std::map<VarId, VarId>& twin) {
  json pairs = json::array();
  for (auto [orig, partner] : twin) pairs.push_back({orig, partner});
  return pairs;
}

std::optional<std::uint64_t> env_budget() {
  const char* s = std::getenv("OPTSEARCH_BUDGET");
  if (!s || !*s) return std::nullopt;
  char* end = nullptr;
  unsigned long long v = std::strtoull(s, &end, 10);
  if (end == s || *end != '\0')
    throw std::invalid_argument("OPTSEARCH_BUDGET is not a number");
  return v;
}

// --budget 0 means "unlimited" and overrides any environment default.
std::optional<std::uint64_t> effective_budget(bool flag_given,
                                              std::uint64_t flag_value) {
  if (flag_given)
    return flag_value == 0 ? std::nullopt
                           : std::optional<std::uint64_t>(flag_value);
  return env_budget();
}

std::uint64_t required_budget(bool flag_given, std::uint64_t flag_value,
                              const char* what) {
  auto b = effective_budget(flag_given, flag_value);
  if (flag_given && flag_value == 0)
    throw std::invalid_argument(std::string(what) +
                                " requires a positive --budget");
  if (!b)
    throw std::invalid_argument(std::string(what) +
                                " requires --budget or OPTSEARCH_BUDGET");
  return *b;
}

// Accepts decimal, 0x-prefixed hex, and 0b-prefixed binary naturals.
BigNat parse_bignat(const std::string& s) {
  try {
    if (s.rfind("0b", 0) == 0 || s.rfind("0B", 0) == 0) {
      if (s.size() == 2) throw std::invalid_argument(s);
      BigNat v = 0;
      for (std::size_t i = 2; i < s.size(); ++i) {
        if (s[i] != '0' && s[i] != '1') throw std::invalid_argument(s);
        v = v * 2 + (s[i] - '0');
      }
      return v;
    }
    BigNat v(s);
    if (v < 0) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("not a natural number: " + s);
  }
}

TreeDiscipline make_discipline(const std::string& method,
                               const std::vector<VarId>& allowed) {
  TreeDiscipline d;
  if (method == "bt")
    d = TreeDiscipline::backtracking();
  else if (method == "dpll")
    d = TreeDiscipline::dpll();
  else if (method == "dpllmono")
    d = TreeDiscipline::dpll_mono();
  else
    throw std::invalid_argument("unknown method: " + method);
  if (!allowed.empty()) d = d.restricted_to(allowed);
  return d;
}

// ---------------------------------------------------------------------------

int run_gen(const std::string& family, std::uint64_t n,
            const std::string& kind, const std::string& out,
            const std::string& sidecar) {
  FreshAllocator alloc;
  json meta;
  Formula f;
  if (family == "php") {
    f = hard_family(HardFamilyKind::PigeonHole, n, alloc);
    meta = {{"operation", "gen-php"}, {"holes", n}};
  } else if (family == "tseitin") {
    f = hard_family(HardFamilyKind::TseitinComplete, n, alloc);
    meta = {{"operation", "gen-tseitin"}, {"n", n}};
  } else if (family == "completek") {
    f = hard_family(HardFamilyKind::CompleteBlock, n, alloc);
    meta = {{"operation", "gen-completek"}, {"n", n}};
  } else if (family == "vn") {
    CompleteTreeFormula v = v_formula(n, alloc);
    f = v.formula;
    meta["operation"] = "gen-vn";
    meta["n"] = n;
    meta["allowed"] = v.branch_vars;
    meta["roles"] = {{"x", v.x_vars},
                     {"y", std::vector<VarId>{v.y}},
                     {"v", v.v_vars},
                     {"a", std::vector<VarId>{v.a}},
                     {"b", std::vector<VarId>{v.b}}};
  } else if (family == "im") {
    TreeDiscipline d = kind == "bt" ? TreeDiscipline::backtracking()
                                    : TreeDiscipline::dpll_mono();
    ExactSizeBlock b = exact_size_block(n, d, alloc);
    f = b.formula;
    meta["operation"] = "gen-im";
    meta["m"] = n;
    meta["discipline"] = discipline_json(d);
    meta["allowed"] = b.branch_vars;
  } else {
    throw std::invalid_argument("unknown family: " + family);
  }
  emit_with_sidecar(out, sidecar, f, meta);
  return kExitOk;
}

int run_combine(const std::string& op, const std::string& a_path,
                const std::string& b_path, const std::string& out,
                const std::string& sidecar) {
  Formula a = load_cnf(a_path);
  Formula b = load_cnf(b_path);
  if (op == "union") {
    Formula u = union_disjoint(a, b);
    emit_with_sidecar(out, sidecar, u, {{"operation", "combine-union"}});
  } else if (op == "sum") {
    FreshAllocator alloc = FreshAllocator::above({&a, &b});
    SumResult s = sum(a, b, alloc);
    emit_with_sidecar(out, sidecar, s.formula,
                      {{"operation", "combine-sum"},
                       {"distinguished", s.connective}});
  } else if (op == "product") {
    Formula p = product(a, b);
    emit_with_sidecar(out, sidecar, p, {{"operation", "combine-product"}});
  } else {
    throw std::invalid_argument("unknown combine operation: " + op);
  }
  return kExitOk;
}

int run_transform(const std::string& which, const std::string& input,
                  const std::vector<VarId>& xs, const std::string& gamma_text,
                  const std::string& map_tree, const std::string& proof_path,
                  VarId pivot, const std::string& out,
                  const std::string& sidecar) {
  if (which == "pushx") {
    if (proof_path.empty() || pivot <= 0)
      throw std::invalid_argument("pushx needs --proof and a positive --pivot");
    ResolutionProof p = parse_proof_trace(read_file(proof_path));
    ResolutionProof pushed = push_pivot_to_leaves(p, pivot);
    write_output(out, proof_trace(pushed));
    return kExitOk;
  }
  if (input.empty())
    throw std::invalid_argument("transform " + which + " needs a formula file");
  Formula f = load_cnf(input);
  FreshAllocator alloc = FreshAllocator::above(f);
  if (which == "lemma1") {
    TwinWidening w = to_dpll_equivalent(f, alloc);
    if (!map_tree.empty()) {
      SearchTree t = parse_tree(read_file(map_tree));
      write_output(out, to_text(lemma1_tree_back(t, w.twin)) + "\n");
      return kExitOk;
    }
    emit_with_sidecar(out, sidecar, w.formula,
                      {{"operation", "transform-lemma1"},
                       {"twin", twin_json(w.twin)}});
  } else if (which == "shield") {
    MonoShield s = mono_shield(f, alloc);
    emit_with_sidecar(out, sidecar, s.formula,
                      {{"operation", "transform-shield"},
                       {"twin", twin_json(s.twin)}});
  } else if (which == "cx") {
    SelectorGadget g = c_transform(f, xs, alloc);
    json meta;
    meta["operation"] = "transform-cx";
    meta["allowed"] = g.branch_vars;
    meta["roles"] = {{"x", g.x_vars},
                     {"v", g.v_vars},
                     {"a", std::vector<VarId>{g.a}},
                     {"b", std::vector<VarId>{g.b}}};
    emit_with_sidecar(out, sidecar, g.formula, meta);
  } else if (which == "ex") {
    CountingGadget e =
        xs.empty() ? e_transform(f, alloc) : e_transform(f, xs, alloc);
    json meta;
    meta["operation"] = "transform-ex";
    meta["allowed"] = e.branch_vars;
    meta["roles"] = {{"x", e.x_vars},
                     {"y", std::vector<VarId>{e.y}},
                     {"p", std::vector<VarId>{e.p}},
                     {"q", std::vector<VarId>{e.q}},
                     {"v", e.v_vars},
                     {"a", std::vector<VarId>{e.a}},
                     {"b", std::vector<VarId>{e.b}}};
    emit_with_sidecar(out, sidecar, e.formula, meta);
  } else if (which == "gx") {
    if (gamma_text.empty())
      throw std::invalid_argument("gx needs --gamma CLAUSE");
    Clause gamma = parse_clause(gamma_text);
    VarId x = alloc.fresh();
    Formula g = g_transform(f, gamma, x);
    emit_with_sidecar(out, sidecar, g,
                      {{"operation", "transform-gx"},
                       {"x", x},
                       {"gamma", to_text(gamma)}});
  } else if (which == "fxy") {
    VarId x = alloc.fresh();
    VarId y = alloc.fresh();
    Formula g = f_transform(f, x, y);
    emit_with_sidecar(out, sidecar, g,
                      {{"operation", "transform-fxy"}, {"x", x}, {"y", y}});
  } else {
    throw std::invalid_argument("unknown transform: " + which);
  }
  return kExitOk;
}

int run_opt(const std::string& input, const std::string& method,
            const std::vector<VarId>& allowed, bool budget_given,
            std::uint64_t budget, bool decompose, bool want_size,
            bool want_tree, VarId obv_var, const std::string& ots_bound,
            const std::string& out) {
  int selected = int(want_size) + int(want_tree) + int(obv_var > 0) +
                 int(!ots_bound.empty());
  if (selected != 1)
    throw std::invalid_argument(
        "choose exactly one of --size, --tree, --obv, --ots");
  Formula f = load_cnf(input);
  OracleConfig cfg = OracleConfig::with(make_discipline(method, allowed));
  cfg.node_budget = effective_budget(budget_given, budget);
  cfg.decompose_components = decompose;
  if (want_size) {
    write_output(out, optimal_size(f, cfg).str() + "\n");
  } else if (want_tree) {
    write_output(out, to_text(optimal_tree(f, cfg)) + "\n");
  } else if (obv_var > 0) {
    bool r = is_optimal_branch_var(f, obv_var, cfg);
    write_output(out, r ? "true\n" : "false\n");
  } else {
    bool r = has_tree_within(f, parse_bignat(ots_bound), cfg);
    write_output(out, r ? "true\n" : "false\n");
  }
  return kExitOk;
}

int run_res(const std::string& input, bool min_size, bool witness,
            const std::vector<std::string>& orp_clauses,
            const std::string& validate_path, const std::string& explore,
            bool budget_given, std::uint64_t budget, std::uint64_t samples,
            std::uint64_t seed, const std::string& out) {
  if (!explore.empty()) {
    ExploratoryReport rep = run_exploratory_suite(explore, samples, seed);
    write_output(out, serialize_report(rep));
    return kExitOk;
  }
  int selected =
      int(min_size) + int(!orp_clauses.empty()) + int(!validate_path.empty());
  if (selected != 1)
    throw std::invalid_argument(
        "choose one of --min-size, --orp, --validate, --explore");
  if (input.empty())
    throw std::invalid_argument("res needs a formula file");
  Formula f = load_cnf(input);
  if (min_size) {
    std::uint64_t b = required_budget(budget_given, budget, "--min-size");
    if (witness) {
      MinProofResult r = min_regular_proof(f, b);
      if (!r.witness) {
        write_output(out, "# no refutation exists\nsize: inf\n");
        return kExitOk;
      }
      write_output(out, "# minimum size: " + r.size.str() + "\n" +
                            proof_trace(*r.witness));
      return kExitOk;
    }
    write_output(out, min_regular_size(f, b).str() + "\n");
    return kExitOk;
  }
  if (!orp_clauses.empty()) {
    std::uint64_t b = required_budget(budget_given, budget, "--orp");
    Clause c1 = parse_clause(orp_clauses[0]);
    Clause c2 = parse_clause(orp_clauses[1]);
    bool r = is_optimal_resolution_pair(f, c1, c2, b);
    write_output(out, r ? "true\n" : "false\n");
    return kExitOk;
  }
  ResolutionProof p = parse_proof_trace(read_file(validate_path));
  bool ok = validate_regular_proof(f, p);
  write_output(out, ok ? "valid\n" : "invalid\n");
  return ok ? kExitOk : kExitVerifyFailed;
}

int run_reduce(const std::string& which, const std::vector<std::string>& files,
               const std::string& method, std::uint64_t hard_size,
               bool k_given, std::uint64_t k, const std::vector<VarId>& xs,
               const std::vector<VarId>& ys, std::uint64_t threshold,
               const std::string& out, const std::string& sidecar) {
  auto above_all = [](const std::vector<Formula>& fs) {
    VarId top = 0;
    for (const Formula& f : fs) top = std::max(top, f.max_var());
    return FreshAllocator(top + 1);
  };
  if (which == "paritysat") {
    if (files.size() < 2)
      throw std::invalid_argument("paritysat needs at least two formula files");
    std::vector<Formula> seq;
    seq.reserve(files.size());
    for (const std::string& p : files) seq.push_back(load_cnf(p));
    if (method == "dpllmono")
      throw std::invalid_argument(
          "paritysat supports methods bt and dpll only");
    TreeDiscipline kind = method == "dpll" ? TreeDiscipline::dpll()
                                           : TreeDiscipline::backtracking();
    FreshAllocator alloc = above_all(seq);
    ReductionOutput r = reduce_parity_sat(seq, kind, alloc, hard_size);
    emit_with_sidecar(out, sidecar, r.formula, reduction_json(which, r));
    return kExitOk;
  }
  if (files.size() != 1)
    throw std::invalid_argument(which + " needs exactly one formula file");
  Formula f = load_cnf(files[0]);
  FreshAllocator alloc = above_all({f});
  ReductionOutput r;
  if (which == "otsconp") {
    if (method == "dpll")
      throw std::invalid_argument(
          "otsconp supports methods bt and dpllmono only");
    TreeDiscipline kind = method == "dpllmono"
                              ? TreeDiscipline::dpll_mono()
                              : TreeDiscipline::backtracking();
    r = reduce_ots_conp(f, kind, alloc);
  } else if (which == "otstoobv") {
    if (!k_given) throw std::invalid_argument("otstoobv needs --k");
    r = reduce_ots_to_obv(f, k, alloc);
  } else if (which == "eminsat") {
    if (xs.empty() || ys.empty())
      throw std::invalid_argument("eminsat needs --x LIST and --y LIST");
    for (VarId v : xs) alloc.reserve_id(v);
    for (VarId v : ys) alloc.reserve_id(v);
    r = reduce_eminsat(f, xs, ys, alloc);
  } else if (which == "orp") {
    r = reduce_orp(f, alloc, threshold);
  } else {
    throw std::invalid_argument("unknown reduction: " + which);
  }
  emit_with_sidecar(out, sidecar, r.formula, reduction_json(which, r));
  return kExitOk;
}

int run_verify(const std::string& suite, std::uint64_t samples,
               std::uint64_t seed, std::uint64_t max_vars,
               const std::string& out) {
  std::vector<std::string> suites;
  if (suite == "all")
    suites = law_suite_names();
  else
    suites.push_back(suite);
  std::string text;
  bool all_passed = true;
  for (std::size_t i = 0; i < suites.size(); ++i) {
    LawSuiteReport r = run_law_suite(suites[i], samples, seed, max_vars);
    if (i) text += "\n";
    text += serialize_report(r);
    std::cerr << "# " << r.suite << " elapsed: " << r.elapsed_seconds
              << "s\n";
    all_passed = all_passed && r.passed();
  }
  write_output(out, text);
  return all_passed ? kExitOk : kExitVerifyFailed;
}

int run_export_dot(const std::string& tree_path, const std::string& proof_path,
                   const std::string& out) {
  if (tree_path.empty() == proof_path.empty())
    throw std::invalid_argument(
        "export-dot needs exactly one of --tree, --proof");
  if (!tree_path.empty()) {
    write_output(out, tree_to_dot(parse_tree(read_file(tree_path))));
  } else {
    write_output(out, proof_to_dot(parse_proof_trace(read_file(proof_path))));
  }
  return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"optimal proof search laboratory for CNF formulas"};
  app.require_subcommand(1);

  // gen ---------------------------------------------------------------------
  auto* gen = app.add_subcommand(
      "gen", "generate a formula family (php|tseitin|completek|vn|im)");
  std::string gen_family, gen_kind = "dpllmono", gen_out, gen_sidecar;
  std::uint64_t gen_n = 0;
  gen->add_option("family", gen_family, "php|tseitin|completek|vn|im")
      ->required();
  gen->add_option("--n", gen_n, "size parameter (holes / n / m)")->required();
  gen->add_option("--kind", gen_kind, "im chain discipline: bt|dpllmono")
      ->check(CLI::IsMember({"bt", "dpllmono"}));
  gen->add_option("-o,--out", gen_out, "output file (default stdout)");
  gen->add_option("--sidecar", gen_sidecar, "metadata JSON path");

  // combine -----------------------------------------------------------------
  auto* comb = app.add_subcommand("combine",
                                  "combine two formulas (union|sum|product)");
  std::string comb_op, comb_a, comb_b, comb_out, comb_sidecar;
  comb->add_option("op", comb_op, "union|sum|product")->required();
  comb->add_option("a", comb_a, "first DIMACS file")->required();
  comb->add_option("b", comb_b, "second DIMACS file")->required();
  comb->add_option("-o,--out", comb_out, "output file (default stdout)");
  comb->add_option("--sidecar", comb_sidecar, "metadata JSON path");

  // transform ---------------------------------------------------------------
  auto* tr = app.add_subcommand(
      "transform",
      "apply a transformation (lemma1|shield|cx|ex|gx|fxy|pushx)");
  std::string tr_which, tr_input, tr_gamma, tr_map_tree, tr_proof, tr_out,
      tr_sidecar;
  std::vector<VarId> tr_xs;
  VarId tr_pivot = 0;
  tr->add_option("which", tr_which, "lemma1|shield|cx|ex|gx|fxy|pushx")
      ->required();
  tr->add_option("input", tr_input, "DIMACS file (not used by pushx)");
  tr->add_option("--x", tr_xs, "branch/declared variable list")
      ->delimiter(',');
  tr->add_option("--gamma", tr_gamma, "guarded clause, e.g. \"x1 -x2\"");
  tr->add_option("--map-tree", tr_map_tree,
                 "lemma1: relabel this widened-alphabet tree back");
  tr->add_option("--proof", tr_proof, "pushx: proof trace to rewrite");
  tr->add_option("--pivot", tr_pivot, "pushx: pivot variable to push");
  tr->add_option("-o,--out", tr_out, "output file (default stdout)");
  tr->add_option("--sidecar", tr_sidecar, "metadata JSON path");

  // opt ---------------------------------------------------------------------
  auto* opt = app.add_subcommand(
      "opt", "optimal search-tree oracle (size/tree/branch-variable/bound)");
  std::string opt_input, opt_method = "bt", opt_ots, opt_out;
  std::vector<VarId> opt_allowed;
  std::uint64_t opt_budget = 0;
  VarId opt_obv = 0;
  bool opt_size = false, opt_tree = false, opt_decompose = false;
  opt->add_option("input", opt_input, "DIMACS file")->required();
  opt->add_option("--method", opt_method, "bt|dpll|dpllmono")
      ->check(CLI::IsMember({"bt", "dpll", "dpllmono"}));
  opt->add_option("--allowed", opt_allowed, "restrict branching to these ids")
      ->delimiter(',');
  auto* opt_budget_opt =
      opt->add_option("--budget", opt_budget, "node budget (0 = unlimited)");
  opt->add_flag("--decompose", opt_decompose,
                "split variable-disjoint parts inside the search");
  opt->add_flag("--size", opt_size, "print the optimal size");
  opt->add_flag("--tree", opt_tree, "print one optimal tree");
  opt->add_option("--obv", opt_obv, "is this variable an optimal first branch");
  opt->add_option("--ots", opt_ots,
                  "is there a tree of size <= K (decimal/0x/0b)");
  opt->add_option("-o,--out", opt_out, "output file (default stdout)");

  // res ---------------------------------------------------------------------
  auto* res = app.add_subcommand(
      "res", "minimum regular-resolution refutations and proof checking");
  std::string res_input, res_validate, res_explore, res_out;
  std::vector<std::string> res_orp;
  std::uint64_t res_budget = 0, res_samples = 20, res_seed = 1;
  bool res_min = false, res_witness = false;
  res->add_option("input", res_input, "DIMACS file");
  res->add_flag("--min-size", res_min, "print the minimum refutation size");
  res->add_flag("--witness", res_witness,
                "with --min-size: print a witness proof trace");
  res->add_option("--orp", res_orp,
                  "two clause texts: is the pair resolved in some minimum "
                  "proof")
      ->expected(2);
  res->add_option("--validate", res_validate, "proof trace file to check");
  res->add_option("--explore", res_explore,
                  "report-only tally for an open law: sum|product")
      ->check(CLI::IsMember({"sum", "product"}));
  auto* res_budget_opt =
      res->add_option("--budget", res_budget, "search step budget (required)");
  res->add_option("--samples", res_samples, "explore: number of instances");
  res->add_option("--seed", res_seed, "explore: random seed");
  res->add_option("-o,--out", res_out, "output file (default stdout)");

  // reduce ------------------------------------------------------------------
  auto* red = app.add_subcommand(
      "reduce",
      "decision-problem reductions (paritysat|otsconp|otstoobv|eminsat|orp)");
  std::string red_which, red_method = "bt", red_out, red_sidecar;
  std::vector<std::string> red_files;
  std::vector<VarId> red_xs, red_ys;
  std::uint64_t red_hard = 0, red_k = 0, red_threshold = 2;
  red->add_option("which", red_which,
                  "paritysat|otsconp|otstoobv|eminsat|orp")
      ->required();
  red->add_option("files", red_files, "input DIMACS file(s)");
  red->add_option("--method", red_method, "bt|dpll|dpllmono where applicable")
      ->check(CLI::IsMember({"bt", "dpll", "dpllmono"}));
  red->add_option("--hard-size", red_hard,
                  "paritysat: spacer block size (0 = derive)");
  auto* red_k_opt =
      red->add_option("--k", red_k, "otstoobv: size threshold to embed");
  red->add_option("--x", red_xs, "eminsat: existential variable list")
      ->delimiter(',');
  red->add_option("--y", red_ys, "eminsat: counting variable list")
      ->delimiter(',');
  red->add_option("--threshold", red_threshold,
                  "orp: refutation-size threshold the spacer must exceed");
  red->add_option("-o,--out", red_out, "output file (default stdout)");
  red->add_option("--sidecar", red_sidecar, "metadata JSON path");

  // verify ------------------------------------------------------------------
  auto* ver = app.add_subcommand(
      "verify", "run a seeded law-verification suite ('all' for every suite)");
  std::string ver_suite, ver_out;
  std::uint64_t ver_samples = 50, ver_seed = 1, ver_max_vars = 4;
  ver->add_option("suite", ver_suite,
                  "union|sum|product|lemma1|shield|cx-size|ex-size|"
                  "exact-size|res-union|res-gx|reductions|all")
      ->required();
  ver->add_option("--samples", ver_samples, "instances per suite");
  ver->add_option("--seed", ver_seed, "random seed");
  ver->add_option("--max-vars", ver_max_vars, "variable cap per instance");
  ver->add_option("-o,--out", ver_out, "report file (default stdout)");

  // export-dot --------------------------------------------------------------
  auto* dot = app.add_subcommand("export-dot",
                                 "draw a search tree or a proof DAG as DOT");
  std::string dot_tree, dot_proof, dot_out;
  dot->add_option("--tree", dot_tree, "search-tree text file");
  dot->add_option("--proof", dot_proof, "proof trace file");
  dot->add_option("-o,--out", dot_out, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*gen)
      return run_gen(gen_family, gen_n, gen_kind, gen_out, gen_sidecar);
    if (*comb)
      return run_combine(comb_op, comb_a, comb_b, comb_out, comb_sidecar);
    if (*tr)
      return run_transform(tr_which, tr_input, tr_xs, tr_gamma, tr_map_tree,
                           tr_proof, tr_pivot, tr_out, tr_sidecar);
    if (*opt)
      return run_opt(opt_input, opt_method, opt_allowed,
                     opt_budget_opt->count() > 0, opt_budget, opt_decompose,
                     opt_size, opt_tree, opt_obv, opt_ots, opt_out);
    if (*res)
      return run_res(res_input, res_min, res_witness, res_orp, res_validate,
                     res_explore, res_budget_opt->count() > 0, res_budget,
                     res_samples, res_seed, res_out);
    if (*red)
      return run_reduce(red_which, red_files, red_method, red_hard,
                        red_k_opt->count() > 0, red_k, red_xs, red_ys,
                        red_threshold, red_out, red_sidecar);
    if (*ver)
      return run_verify(ver_suite, ver_samples, ver_seed, ver_max_vars,
                        ver_out);
    if (*dot) return run_export_dot(dot_tree, dot_proof, dot_out);
    std::cerr << "error: no subcommand selected\n";
    return kExitUsage;
  } catch (const BudgetExhausted& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBudget;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
