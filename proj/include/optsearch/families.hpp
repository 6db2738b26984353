#pragma once
// Named unsatisfiable benchmark families: pigeonhole, parity contradictions
// over complete graphs, and the full clause block over n variables.

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "optsearch/cnf.hpp"
#include "optsearch/combine.hpp"

namespace optsearch {

enum class HardFamilyKind { PigeonHole, TseitinComplete, CompleteBlock };

// holes+1 pigeons into `holes` holes: per-pigeon placement clauses plus
// per-hole exclusion pairs.  Variables p(i,j) are allocated row-major.
inline Formula pigeonhole_formula(std::uint64_t holes, FreshAllocator& alloc) {
  const std::uint64_t pigeons = holes + 1;
  std::vector<std::vector<VarId>> p(pigeons, std::vector<VarId>(holes));
  for (auto& row : p)
    for (VarId& v : row) v = alloc.fresh();
  std::vector<Clause> out;
  for (const auto& row : p) {
    std::vector<Literal> lits;
    lits.reserve(holes);
    for (VarId v : row) lits.push_back(pos(v));
    out.push_back(Clause(std::move(lits)));
  }
  for (std::uint64_t j = 0; j < holes; ++j)
    for (std::uint64_t i1 = 0; i1 < pigeons; ++i1)
      for (std::uint64_t i2 = i1 + 1; i2 < pigeons; ++i2)
        out.push_back(Clause({neg(p[i1][j]), neg(p[i2][j])}));
  return Formula(std::move(out));
}

// Parity constraints over the complete graph on n vertices, vertex 0 charged
// odd and the rest even; the total charge is odd, so the system has no
// solution.  Each vertex contributes the 2^{n-2} clauses blocking the
// incident-edge assignments of the wrong parity.  Edge variables e(u,v),
// u < v, are allocated in lexicographic order.
inline Formula tseitin_complete_formula(std::uint64_t n, FreshAllocator& alloc) {
  if (n < 2)
    throw std::invalid_argument("tseitin: need at least 2 vertices");
  std::vector<std::vector<VarId>> e(n, std::vector<VarId>(n, 0));
  for (std::uint64_t u = 0; u < n; ++u)
    for (std::uint64_t v = u + 1; v < n; ++v) e[u][v] = alloc.fresh();
  std::vector<Clause> out;
  for (std::uint64_t v = 0; v < n; ++v) {
    std::vector<VarId> inc;
    inc.reserve(n - 1);
    for (std::uint64_t u = 0; u < n; ++u)
      if (u != v) inc.push_back(u < v ? e[u][v] : e[v][u]);
    const unsigned charge = (v == 0) ? 1u : 0u;
    const std::uint64_t d = inc.size();
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << d); ++mask) {
      if ((static_cast<unsigned>(std::popcount(mask)) & 1u) == charge) continue;
      std::vector<Literal> lits;
      lits.reserve(d);
      for (std::uint64_t i = 0; i < d; ++i)
        lits.push_back(((mask >> i) & 1u) ? neg(inc[i]) : pos(inc[i]));
      out.push_back(Clause(std::move(lits)));
    }
  }
  return Formula(std::move(out));
}

// All 2^n full-width clauses over n fresh variables.  Every total assignment
// falsifies exactly the clause matching it, so refuting the formula without
// closure requires a complete tree: optimal plain size 2^n − 1.
inline Formula complete_block_formula(std::uint64_t n, FreshAllocator& alloc) {
  std::vector<VarId> xs;
  xs.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) xs.push_back(alloc.fresh());
  std::vector<Clause> out;
  out.reserve(std::uint64_t{1} << n);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    std::vector<Literal> lits;
    lits.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i)
      lits.push_back(((mask >> i) & 1u) ? neg(xs[i]) : pos(xs[i]));
    out.push_back(Clause(std::move(lits)));
  }
  return Formula(std::move(out));
}

inline Formula hard_family(HardFamilyKind kind, std::uint64_t param,
                           FreshAllocator& alloc) {
  if (param < 1)
    throw std::invalid_argument("hard_family: param must be at least 1");
  switch (kind) {
    case HardFamilyKind::PigeonHole: return pigeonhole_formula(param, alloc);
    case HardFamilyKind::TseitinComplete:
      return tseitin_complete_formula(param, alloc);
    case HardFamilyKind::CompleteBlock:
      return complete_block_formula(param, alloc);
  }
  throw std::logic_error("unknown family");
}

} // namespace optsearch
