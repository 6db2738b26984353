#pragma once
// Regular resolution refutations as DAGs: resolvent computation, proof
// structure, validation, line-oriented trace serialization, and DOT export.

#include <cstddef>
#include <cstdint>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "optsearch/cnf.hpp"
#include "optsearch/cnf_io.hpp"

namespace optsearch {

// union of the remaining literals after removing the clashing pair
inline Clause resolve(const Clause& c1, const Clause& c2, VarId pivot) {
  const bool p1 = c1.contains(pos(pivot)), n1 = c1.contains(neg(pivot));
  const bool p2 = c2.contains(pos(pivot)), n2 = c2.contains(neg(pivot));
  const Clause* withpos = nullptr;
  const Clause* withneg = nullptr;
  if (p1 && n2) {
    withpos = &c1;
    withneg = &c2;
  } else if (p2 && n1) {
    withpos = &c2;
    withneg = &c1;
  } else {
    throw std::invalid_argument(
        "resolve: pivot must occur positively in one clause and negatively "
        "in the other");
  }
  std::vector<Literal> lits;
  lits.reserve(withpos->size() + withneg->size());
  for (Literal l : *withpos)
    if (l != pos(pivot)) lits.push_back(l);
  for (Literal l : *withneg)
    if (l != neg(pivot)) lits.push_back(l);
  return Clause(std::move(lits));
}

// one derived clause; `left` and `right` are node indices (leaves first,
// then steps, in order)
struct ResolutionStep {
  VarId pivot = 0;
  std::size_t left = 0;
  std::size_t right = 0;
  Clause resolvent;
};

class ResolutionProof {
public:
  ResolutionProof() = default;
  ResolutionProof(std::vector<Clause> leaves, std::vector<ResolutionStep> steps,
                  std::size_t root)
      : leaves_(std::move(leaves)), steps_(std::move(steps)), root_(root) {
    const std::size_t n = node_count();
    if (root_ >= n)
      throw std::invalid_argument("proof root index out of range");
    for (const ResolutionStep& s : steps_)
      if (s.left >= n || s.right >= n)
        throw std::invalid_argument("proof step parent index out of range");
  }

  const std::vector<Clause>& leaves() const { return leaves_; }
  const std::vector<ResolutionStep>& steps() const { return steps_; }
  std::size_t root() const { return root_; }
  std::size_t size() const { return steps_.size(); } // derived clauses
  std::size_t node_count() const { return leaves_.size() + steps_.size(); }
  bool is_leaf(std::size_t i) const { return i < leaves_.size(); }
  const Clause& clause_of(std::size_t i) const {
    return i < leaves_.size() ? leaves_[i]
                              : steps_[i - leaves_.size()].resolvent;
  }

private:
  std::vector<Clause> leaves_;
  std::vector<ResolutionStep> steps_;
  std::size_t root_ = 0;
};

namespace detail {
inline bool regular_paths(const ResolutionProof& p, std::size_t node,
                          std::set<VarId>& used) {
  if (p.is_leaf(node)) return true;
  const ResolutionStep& s = p.steps()[node - p.leaves().size()];
  if (used.count(s.pivot)) return false;
  used.insert(s.pivot);
  const bool ok = regular_paths(p, s.left, used) &&
                  regular_paths(p, s.right, used);
  used.erase(s.pivot);
  return ok;
}
} // namespace detail

// True iff every leaf clause belongs to F, parents precede their steps,
// every resolvent is the correct resolution of its parents, the root clause
// is empty, and no root-to-leaf path resolves the same variable twice.
inline bool validate_regular_proof(const Formula& f, const ResolutionProof& p) {
  for (const Clause& c : p.leaves())
    if (!f.contains(c)) return false;
  const std::size_t nl = p.leaves().size();
  for (std::size_t i = 0; i < p.steps().size(); ++i) {
    const ResolutionStep& s = p.steps()[i];
    if (s.left >= nl + i || s.right >= nl + i) return false;
    try {
      if (resolve(p.clause_of(s.left), p.clause_of(s.right), s.pivot) !=
          s.resolvent)
        return false;
    } catch (const std::invalid_argument&) {
      return false;
    }
  }
  if (!p.clause_of(p.root()).empty()) return false;
  std::set<VarId> used;
  return detail::regular_paths(p, p.root(), used);
}

// ---------------------------------------------------------------------------
// trace format: one node per line
//   leaf <id> <lit...> 0
//   step <id> <pivot> <left-id> <right-id> <lit...> 0
//   root <id>
// leaf ids count from 0 in order; step ids continue the numbering.

inline void write_proof_trace(std::ostream& os, const ResolutionProof& p) {
  os << "# regular resolution proof: " << p.leaves().size() << " leaves, "
     << p.size() << " steps\n";
  std::size_t id = 0;
  for (const Clause& c : p.leaves()) {
    os << "leaf " << id++;
    for (Literal l : c) os << ' ' << l.dimacs();
    os << " 0\n";
  }
  for (const ResolutionStep& s : p.steps()) {
    os << "step " << id++ << ' ' << s.pivot << ' ' << s.left << ' ' << s.right;
    for (Literal l : s.resolvent) os << ' ' << l.dimacs();
    os << " 0\n";
  }
  os << "root " << p.root() << "\n";
}

inline std::string proof_trace(const ResolutionProof& p) {
  std::ostringstream os;
  write_proof_trace(os, p);
  return os.str();
}

inline ResolutionProof read_proof_trace(std::istream& is) {
  std::vector<Clause> leaves;
  std::vector<ResolutionStep> steps;
  std::size_t root = 0;
  bool have_root = false;
  std::string line;
  auto read_lits = [](std::istringstream& ls) {
    std::vector<Literal> lits;
    long long v;
    bool terminated = false;
    while (ls >> v) {
      if (v == 0) { terminated = true; break; }
      lits.push_back(Literal::from_dimacs(static_cast<int>(v)));
    }
    if (!terminated)
      throw std::invalid_argument("proof trace: clause not 0-terminated");
    return lits;
  };
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string kind;
    ls >> kind;
    if (kind == "leaf") {
      std::size_t id;
      if (!(ls >> id) || id != leaves.size())
        throw std::invalid_argument("proof trace: leaf ids must count up from 0");
      leaves.push_back(Clause(read_lits(ls)));
    } else if (kind == "step") {
      std::size_t id;
      ResolutionStep s;
      if (!(ls >> id >> s.pivot >> s.left >> s.right))
        throw std::invalid_argument("proof trace: malformed step line");
      if (id != leaves.size() + steps.size())
        throw std::invalid_argument("proof trace: step ids must continue the numbering");
      s.resolvent = Clause(read_lits(ls));
      steps.push_back(std::move(s));
    } else if (kind == "root") {
      if (!(ls >> root))
        throw std::invalid_argument("proof trace: malformed root line");
      have_root = true;
    } else {
      throw std::invalid_argument("proof trace: unknown line kind '" + kind + "'");
    }
  }
  if (!have_root) throw std::invalid_argument("proof trace: missing root line");
  return ResolutionProof(std::move(leaves), std::move(steps), root);
}

inline ResolutionProof parse_proof_trace(const std::string& text) {
  std::istringstream is(text);
  return read_proof_trace(is);
}

// GraphViz rendering: leaves as boxes, derived clauses as ellipses labeled
// with their pivot, edges from parents to resolvents.
inline std::string proof_to_dot(const ResolutionProof& p) {
  std::ostringstream os;
  os << "digraph proof {\n  rankdir=BT;\n";
  for (std::size_t i = 0; i < p.leaves().size(); ++i)
    os << "  n" << i << " [shape=box,label=\"" << to_text(p.leaves()[i])
       << "\"];\n";
  for (std::size_t i = 0; i < p.steps().size(); ++i) {
    const std::size_t id = p.leaves().size() + i;
    const ResolutionStep& s = p.steps()[i];
    os << "  n" << id << " [label=\"x" << s.pivot << ": "
       << to_text(s.resolvent) << "\"];\n";
    os << "  n" << s.left << " -> n" << id << ";\n";
    os << "  n" << s.right << " -> n" << id << ";\n";
  }
  os << "  n" << p.root() << " [penwidth=2];\n}\n";
  return os.str();
}

} // namespace optsearch
