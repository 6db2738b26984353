#pragma once
// Search trees for refuting CNF formulas, the three branching disciplines,
// tree validation, sizes (with an explicit infinity), and tree text/DOT forms.
//
// A tree is either Empty or a node (x, T0, T1); T0 is the x:=false branch.
// Validity at a node is checked against the discipline's closure of the
// current formula: if the closure contains the empty clause the only valid
// tree is Empty; otherwise the tree must branch on a variable of the closure
// residual (restricted to the allowed set, when one is given).

#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "optsearch/cnf.hpp"
#include "optsearch/cnf_io.hpp"

namespace optsearch {

// Size of a refutation object: a natural number or "no refutation exists".
class ProofSize {
public:
  static ProofSize finite(std::uint64_t v) { return ProofSize(true, v); }
  static ProofSize infinite() { return ProofSize(false, 0); }

  bool is_finite() const { return finite_; }
  std::uint64_t value() const {
    if (!finite_) throw std::logic_error("size is infinite");
    return value_;
  }

  friend ProofSize operator+(ProofSize a, ProofSize b) {
    if (!a.finite_ || !b.finite_) return infinite();
    std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
    if (a.value_ > max - b.value_) return finite(max); // saturate
    return finite(a.value_ + b.value_);
  }
  friend ProofSize operator+(ProofSize a, std::uint64_t b) {
    return a + finite(b);
  }

  static ProofSize min(ProofSize a, ProofSize b) { return a < b ? a : b; }

  friend bool operator==(ProofSize a, ProofSize b) {
    return a.finite_ == b.finite_ && a.value_ == b.value_;
  }
  // every finite value is below infinity
  friend bool operator<(ProofSize a, ProofSize b) {
    if (a.finite_ && !b.finite_) return true;
    if (!a.finite_) return false;
    return a.value_ < b.value_;
  }
  friend bool operator<=(ProofSize a, ProofSize b) { return a < b || a == b; }

  std::string str() const { return finite_ ? std::to_string(value_) : "inf"; }

private:
  ProofSize(bool finite, std::uint64_t v) : finite_(finite), value_(v) {}
  bool finite_;
  std::uint64_t value_;
};

inline std::ostream& operator<<(std::ostream& os, ProofSize s) {
  return os << s.str();
}

// ---------------------------------------------------------------------------
// branching disciplines

enum class DisciplineKind {
  Backtracking, // no closure
  Dpll,         // unit propagation + monotone literal rule
  DpllMono      // unit propagation only
};

struct TreeDiscipline {
  DisciplineKind kind = DisciplineKind::Backtracking;
  // branching restricted to these variables when set (sorted); nullopt = all
  std::optional<std::vector<VarId>> allowed;

  static TreeDiscipline backtracking() {
    return {DisciplineKind::Backtracking, std::nullopt};
  }
  static TreeDiscipline dpll() { return {DisciplineKind::Dpll, std::nullopt}; }
  static TreeDiscipline dpll_mono() {
    return {DisciplineKind::DpllMono, std::nullopt};
  }

  TreeDiscipline restricted_to(std::vector<VarId> vars) const {
    std::sort(vars.begin(), vars.end());
    vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
    return {kind, std::move(vars)};
  }

  Formula closure(const Formula& f) const {
    switch (kind) {
      case DisciplineKind::Backtracking: return f;
      case DisciplineKind::Dpll: return dpll_closure(f);
      case DisciplineKind::DpllMono: return up_closure(f);
    }
    throw std::logic_error("bad discipline kind");
  }

  bool branchable(VarId v) const {
    if (!allowed) return true;
    return std::binary_search(allowed->begin(), allowed->end(), v);
  }

  const char* kind_name() const {
    switch (kind) {
      case DisciplineKind::Backtracking: return "backtracking";
      case DisciplineKind::Dpll: return "dpll";
      case DisciplineKind::DpllMono: return "dpllmono";
    }
    return "?";
  }
};

// ---------------------------------------------------------------------------
// trees

class SearchTree {
public:
  SearchTree() = default; // Empty
  SearchTree(VarId var, SearchTree left, SearchTree right);

  bool empty() const { return n_ == nullptr; }
  VarId root_var() const;
  const SearchTree& left() const;  // x := false
  const SearchTree& right() const; // x := true

  std::uint64_t size() const {
    if (empty()) return 0;
    return 1 + left().size() + right().size();
  }

  friend bool operator==(const SearchTree& a, const SearchTree& b) {
    if (a.empty() || b.empty()) return a.empty() == b.empty();
    return a.root_var() == b.root_var() && a.left() == b.left() &&
           a.right() == b.right();
  }

private:
  struct Node;
  const Node& node() const;
  std::shared_ptr<const Node> n_;
};

struct SearchTree::Node {
  VarId var;
  SearchTree left, right;
};

inline SearchTree::SearchTree(VarId var, SearchTree left, SearchTree right)
    : n_(std::make_shared<const Node>(
          Node{var, std::move(left), std::move(right)})) {
  if (var <= 0) throw std::invalid_argument("variable ids are positive");
}

inline const SearchTree::Node& SearchTree::node() const {
  if (!n_) throw std::logic_error("empty tree has no root");
  return *n_;
}

inline VarId SearchTree::root_var() const { return node().var; }
inline const SearchTree& SearchTree::left() const { return node().left; }
inline const SearchTree& SearchTree::right() const { return node().right; }

// Checks T against the recursive definition for the given discipline.
inline bool validate_tree(const Formula& f, const SearchTree& t,
                          const TreeDiscipline& d) {
  Formula c = d.closure(f);
  if (c.has_empty_clause()) return t.empty();
  if (t.empty()) return false;
  VarId v = t.root_var();
  if (!c.mentions(v) || !d.branchable(v)) return false;
  return validate_tree(restricted(c, neg(v)), t.left(), d) &&
         validate_tree(restricted(c, pos(v)), t.right(), d);
}

// ---------------------------------------------------------------------------
// text form: "()" or "(x1 T0 T1)"

inline std::string to_text(const SearchTree& t) {
  if (t.empty()) return "()";
  return "(x" + std::to_string(t.root_var()) + " " + to_text(t.left()) + " " +
         to_text(t.right()) + ")";
}

inline std::ostream& operator<<(std::ostream& os, const SearchTree& t) {
  return os << to_text(t);
}

namespace detail {
inline void skip_ws(const std::string& s, std::size_t& i) {
  while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
}

inline SearchTree parse_tree_rec(const std::string& s, std::size_t& i) {
  skip_ws(s, i);
  if (i >= s.size() || s[i] != '(')
    throw std::invalid_argument("tree text: expected '('");
  ++i;
  skip_ws(s, i);
  if (i < s.size() && s[i] == ')') { // empty tree
    ++i;
    return SearchTree();
  }
  std::size_t start = i;
  while (i < s.size() && s[i] != '(' && s[i] != ')' &&
         !std::isspace(static_cast<unsigned char>(s[i])))
    ++i;
  Literal l = parse_literal(s.substr(start, i - start));
  if (!l.positive())
    throw std::invalid_argument("tree labels are plain variables");
  SearchTree left = parse_tree_rec(s, i);
  SearchTree right = parse_tree_rec(s, i);
  skip_ws(s, i);
  if (i >= s.size() || s[i] != ')')
    throw std::invalid_argument("tree text: expected ')'");
  ++i;
  return SearchTree(l.var(), std::move(left), std::move(right));
}
} // namespace detail

inline SearchTree parse_tree(const std::string& text) {
  std::size_t i = 0;
  SearchTree t = detail::parse_tree_rec(text, i);
  detail::skip_ws(text, i);
  if (i != text.size())
    throw std::invalid_argument("tree text: trailing characters");
  return t;
}

// ---------------------------------------------------------------------------
// DOT export (deterministic pre-order numbering; left edge labeled 0)

namespace detail {
inline int tree_dot_rec(std::ostream& os, const SearchTree& t, int& next) {
  int id = next++;
  if (t.empty()) {
    os << "  n" << id << " [shape=box, label=\"[]\"];\n";
    return id;
  }
  os << "  n" << id << " [shape=circle, label=\"x" << t.root_var() << "\"];\n";
  int l = tree_dot_rec(os, t.left(), next);
  int r = tree_dot_rec(os, t.right(), next);
  os << "  n" << id << " -> n" << l << " [label=\"0\"];\n";
  os << "  n" << id << " -> n" << r << " [label=\"1\"];\n";
  return id;
}
} // namespace detail

inline std::string tree_to_dot(const SearchTree& t) {
  std::ostringstream os;
  os << "digraph searchtree {\n";
  int next = 0;
  detail::tree_dot_rec(os, t, next);
  os << "}\n";
  return os.str();
}

} // namespace optsearch
