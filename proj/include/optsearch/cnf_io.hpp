#pragma once
// Parsing and printing: compact text form ("{x1 -x2, x3}") and DIMACS CNF.
// The empty clause prints as "0", the empty formula as "{}".

#include <cctype>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "optsearch/cnf.hpp"

namespace optsearch {

inline std::string to_text(Literal l) {
  return (l.positive() ? "x" : "-x") + std::to_string(l.var());
}

inline std::string to_text(const Clause& c) {
  if (c.empty()) return "0";
  std::string out;
  for (Literal l : c) {
    if (!out.empty()) out += ' ';
    out += to_text(l);
  }
  return out;
}

inline std::string to_text(const Formula& f) {
  std::string out = "{";
  bool first = true;
  for (const Clause& c : f) {
    if (!first) out += ", ";
    out += to_text(c);
    first = false;
  }
  return out + "}";
}

inline std::string to_text(const Assignment& a) {
  std::string out = "{";
  bool first = true;
  for (auto [v, val] : a) {
    if (!first) out += ", ";
    out += "x" + std::to_string(v) + (val ? ":T" : ":F");
    first = false;
  }
  return out + "}";
}

inline std::ostream& operator<<(std::ostream& os, const Clause& c) {
  return os << to_text(c);
}
inline std::ostream& operator<<(std::ostream& os, const Formula& f) {
  return os << to_text(f);
}
inline std::ostream& operator<<(std::ostream& os, const Assignment& a) {
  return os << to_text(a);
}

// Accepts "x12", "-x12", "12", "-12".
inline Literal parse_literal(const std::string& tok) {
  std::size_t i = 0;
  bool positive = true;
  if (i < tok.size() && (tok[i] == '-' || tok[i] == '~' || tok[i] == '!')) {
    positive = false;
    ++i;
  }
  if (i < tok.size() && tok[i] == 'x') ++i;
  if (i == tok.size())
    throw std::invalid_argument("bad literal: " + tok);
  VarId v = 0;
  for (; i < tok.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(tok[i])))
      throw std::invalid_argument("bad literal: " + tok);
    v = v * 10 + (tok[i] - '0');
  }
  if (v == 0) throw std::invalid_argument("bad literal: " + tok);
  return Literal(v, positive);
}

// Whitespace-separated literals; the single token "0" is the empty clause.
inline Clause parse_clause(const std::string& text) {
  std::istringstream in(text);
  std::vector<Literal> lits;
  std::string tok;
  bool saw_zero = false;
  while (in >> tok) {
    if (tok == "0") {
      saw_zero = true;
      continue;
    }
    lits.push_back(parse_literal(tok));
  }
  if (!saw_zero && lits.empty())
    throw std::invalid_argument("empty clause must be written as 0");
  return Clause(std::move(lits));
}

// "{c1, c2, ...}" with comma-separated clauses; "{}" is the empty formula.
inline Formula parse_formula(const std::string& text) {
  std::size_t a = text.find('{');
  std::size_t b = text.rfind('}');
  if (a == std::string::npos || b == std::string::npos || b < a)
    throw std::invalid_argument("formula text must be brace-enclosed");
  std::string body = text.substr(a + 1, b - a - 1);
  std::vector<Clause> clauses;
  std::size_t start = 0;
  bool any_token = body.find_first_not_of(" \t\n\r") != std::string::npos;
  if (!any_token) return Formula();
  while (start <= body.size()) {
    std::size_t comma = body.find(',', start);
    std::string part = comma == std::string::npos
                           ? body.substr(start)
                           : body.substr(start, comma - start);
    clauses.push_back(parse_clause(part));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return Formula(std::move(clauses));
}

// ---------------------------------------------------------------------------
// DIMACS

inline void write_dimacs(std::ostream& os, const Formula& f) {
  os << "p cnf " << f.max_var() << ' ' << f.size() << '\n';
  for (const Clause& c : f) {
    for (Literal l : c) os << l.dimacs() << ' ';
    os << "0\n";
  }
}

inline std::string to_dimacs(const Formula& f) {
  std::ostringstream os;
  write_dimacs(os, f);
  return os.str();
}

// Tolerant reader: comment lines 'c ...', optional 'p cnf ...' header,
// clauses as 0-terminated literal lists, '%' ends the input.
inline Formula read_dimacs(std::istream& in) {
  std::vector<Clause> clauses;
  std::vector<Literal> cur;
  std::string tok;
  while (in >> tok) {
    if (tok == "c" || tok == "p") {
      std::string rest;
      std::getline(in, rest);
      continue;
    }
    if (tok[0] == 'c' && tok.size() > 1) { // "c..." glued comment
      std::string rest;
      std::getline(in, rest);
      continue;
    }
    if (tok == "%") break;
    if (tok == "0") {
      clauses.emplace_back(std::move(cur));
      cur.clear();
      continue;
    }
    try {
      cur.push_back(Literal::from_dimacs(std::stoi(tok)));
    } catch (const std::exception&) {
      throw std::invalid_argument("bad DIMACS token: " + tok);
    }
  }
  if (!cur.empty())
    throw std::invalid_argument("DIMACS input ends inside a clause");
  return Formula(std::move(clauses));
}

inline Formula read_dimacs(const std::string& text) {
  std::istringstream in(text);
  return read_dimacs(in);
}

} // namespace optsearch
