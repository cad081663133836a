// Copyright 2026 The setsyl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/// @file
/// Surface language: terms, atoms, literals and quantifier-free formulae over
/// the set, linear-arithmetic and list signatures, with a canonical printer.
///
/// All values are immutable after construction and share structure through
/// `std::shared_ptr<const ...>`, so copies are cheap and thread-safe.

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "setsyl/error.hpp"

namespace setsyl {

using Rational = boost::multiprecision::cpp_rational;

inline std::string to_string(const Rational& r) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

/// A named variable. Names are compared case-sensitively.
struct Variable {
  std::string name;

  Variable() = default;
  explicit Variable(std::string n) : name(std::move(n)) {}

  friend auto operator<=>(const Variable&, const Variable&) = default;
  friend bool operator==(const Variable&, const Variable&) = default;
};

/// Names starting with this prefix are produced by the normalizer.
inline constexpr std::string_view kFreshPrefix = "_g";
/// Names starting with this prefix are produced by purification.
inline constexpr std::string_view kPurifyPrefix = "_p";

inline bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  if (s.front() >= '0' && s.front() <= '9') return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
           c == '_' || c == '\'';
  });
}

enum class Op : std::uint8_t {
  Var,
  Empty,
  Const,
  // MLS
  Union,
  Inter,
  Setminus,
  // set-theoretic extensions, evaluated by the oracle only
  Single,
  Pow,
  BigUnion,
  BigInter,
  Cross,
  UCross,
  // linear rational arithmetic
  Plus,
  Neg,
  // lists
  Cons,
  Car,
  Cdr,
};

/// Surface keyword of an operator; empty for leaves.
inline std::string_view op_keyword(Op op) {
  switch (op) {
    case Op::Union: return "union";
    case Op::Inter: return "inter";
    case Op::Setminus: return "setminus";
    case Op::Single: return "single";
    case Op::Pow: return "pow";
    case Op::BigUnion: return "bigU";
    case Op::BigInter: return "bigI";
    case Op::Cross: return "cross";
    case Op::UCross: return "ucross";
    case Op::Plus: return "+";
    case Op::Neg: return "-";
    case Op::Cons: return "cons";
    case Op::Car: return "car";
    case Op::Cdr: return "cdr";
    case Op::Var:
    case Op::Empty:
    case Op::Const: return "";
  }
  return "";
}

inline std::size_t op_arity(Op op) {
  switch (op) {
    case Op::Var:
    case Op::Empty:
    case Op::Const: return 0;
    case Op::Single:
    case Op::Pow:
    case Op::BigUnion:
    case Op::BigInter:
    case Op::Neg:
    case Op::Car:
    case Op::Cdr: return 1;
    case Op::Union:
    case Op::Inter:
    case Op::Setminus:
    case Op::Cross:
    case Op::UCross:
    case Op::Plus:
    case Op::Cons: return 2;
  }
  return 0;
}

inline bool op_from_keyword(std::string_view kw, Op& out) {
  static constexpr Op kOps[] = {Op::Union, Op::Inter,    Op::Setminus, Op::Single, Op::Pow,
                                Op::BigUnion, Op::BigInter, Op::Cross, Op::UCross, Op::Plus,
                                Op::Neg,   Op::Cons,     Op::Car,      Op::Cdr};
  for (Op op : kOps) {
    if (op_keyword(op) == kw) {
      out = op;
      return true;
    }
  }
  return false;
}

inline bool is_mls_op(Op op) {
  return op == Op::Union || op == Op::Inter || op == Op::Setminus || op == Op::Empty;
}
inline bool is_ext_op(Op op) {
  return op == Op::Single || op == Op::Pow || op == Op::BigUnion || op == Op::BigInter ||
         op == Op::Cross || op == Op::UCross;
}
inline bool is_arith_op(Op op) { return op == Op::Plus || op == Op::Neg || op == Op::Const; }
inline bool is_list_op(Op op) { return op == Op::Cons || op == Op::Car || op == Op::Cdr; }

class Term {
 public:
  static Term var(Variable v) {
    auto n = std::make_shared<Node>();
    n->op = Op::Var;
    n->var = std::move(v);
    return Term(std::move(n));
  }
  static Term var(std::string name) { return var(Variable(std::move(name))); }

  static Term empty() {
    auto n = std::make_shared<Node>();
    n->op = Op::Empty;
    return Term(std::move(n));
  }

  static Term constant(Rational value) {
    auto n = std::make_shared<Node>();
    n->op = Op::Const;
    n->value = std::move(value);
    return Term(std::move(n));
  }

  /// Builds an operator application; throws ArityError on a wrong argument count.
  static Term apply(Op op, std::vector<Term> args) {
    if (op == Op::Var || op == Op::Empty || op == Op::Const)
      throw InvariantViolation("Term::apply used with a leaf operator");
    if (args.size() != op_arity(op))
      throw ArityError(std::string(op_keyword(op)), op_arity(op), args.size());
    auto n = std::make_shared<Node>();
    n->op = op;
    n->args = std::move(args);
    return Term(std::move(n));
  }
  static Term apply(Op op, Term a) { return apply(op, std::vector<Term>{std::move(a)}); }
  static Term apply(Op op, Term a, Term b) {
    return apply(op, std::vector<Term>{std::move(a), std::move(b)});
  }

  Op op() const { return node_->op; }
  bool is_var() const { return node_->op == Op::Var; }
  const Variable& variable() const { return node_->var; }
  const Rational& value() const { return node_->value; }
  std::span<const Term> args() const { return node_->args; }
  const Term& arg(std::size_t i) const { return node_->args.at(i); }

  friend bool operator==(const Term& a, const Term& b) {
    if (a.node_ == b.node_) return true;
    if (a.op() != b.op()) return false;
    switch (a.op()) {
      case Op::Var: return a.variable() == b.variable();
      case Op::Empty: return true;
      case Op::Const: return a.value() == b.value();
      default: return std::ranges::equal(a.args(), b.args());
    }
  }

 private:
  struct Node {
    Op op = Op::Empty;
    Variable var;
    Rational value;
    std::vector<Term> args;
  };
  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

enum class Pred : std::uint8_t { In, Eq, Subset, Leq, IsAtom };

inline std::string_view pred_keyword(Pred p) {
  switch (p) {
    case Pred::In: return "in";
    case Pred::Eq: return "=";
    case Pred::Subset: return "subset";
    case Pred::Leq: return "<=";
    case Pred::IsAtom: return "atom";
  }
  return "";
}

inline std::size_t pred_arity(Pred p) { return p == Pred::IsAtom ? 1 : 2; }

inline bool pred_from_keyword(std::string_view kw, Pred& out) {
  for (Pred p : {Pred::In, Pred::Eq, Pred::Subset, Pred::Leq, Pred::IsAtom}) {
    if (pred_keyword(p) == kw) {
      out = p;
      return true;
    }
  }
  return false;
}

struct Atom {
  Pred pred = Pred::Eq;
  std::vector<Term> args;

  static Atom make(Pred p, std::vector<Term> args) {
    if (args.size() != pred_arity(p))
      throw ArityError(std::string(pred_keyword(p)), pred_arity(p), args.size());
    return Atom{p, std::move(args)};
  }
  static Atom in(Term a, Term b) { return make(Pred::In, {std::move(a), std::move(b)}); }
  static Atom eq(Term a, Term b) { return make(Pred::Eq, {std::move(a), std::move(b)}); }
  static Atom subset(Term a, Term b) { return make(Pred::Subset, {std::move(a), std::move(b)}); }
  static Atom leq(Term a, Term b) { return make(Pred::Leq, {std::move(a), std::move(b)}); }
  static Atom is_atom(Term a) { return make(Pred::IsAtom, {std::move(a)}); }

  const Term& lhs() const { return args.at(0); }
  const Term& rhs() const { return args.at(1); }

  friend bool operator==(const Atom&, const Atom&) = default;
};

/// An atom or its negation.
struct Literal {
  Atom atom;
  bool positive = true;

  Literal negated() const { return Literal{atom, !positive}; }
  friend bool operator==(const Literal&, const Literal&) = default;
};

/// A conjunction of literals.
using LiteralConjunction = std::vector<Literal>;

enum class FormulaKind : std::uint8_t { Atom, Not, And, Or };

class Formula {
 public:
  /// Defaults to the constant true.
  Formula() : node_(truth().node_) {}
  static Formula atom(Atom a) {
    auto n = std::make_shared<Node>();
    n->kind = FormulaKind::Atom;
    n->atom = std::move(a);
    return Formula(std::move(n));
  }
  static Formula literal(const Literal& l) {
    return l.positive ? atom(l.atom) : negation(atom(l.atom));
  }
  static Formula negation(Formula f) {
    auto n = std::make_shared<Node>();
    n->kind = FormulaKind::Not;
    n->children.push_back(std::move(f));
    return Formula(std::move(n));
  }
  static Formula conjunction(std::vector<Formula> fs) { return nary(FormulaKind::And, std::move(fs)); }
  static Formula disjunction(std::vector<Formula> fs) { return nary(FormulaKind::Or, std::move(fs)); }
  /// Implication is sugar: a -> b becomes (or (not a) b).
  static Formula implies(Formula a, Formula b) {
    return disjunction({negation(std::move(a)), std::move(b)});
  }
  static Formula conjunction_of(const LiteralConjunction& lits) {
    std::vector<Formula> fs;
    fs.reserve(lits.size());
    for (const auto& l : lits) fs.push_back(literal(l));
    if (fs.empty()) return truth();
    if (fs.size() == 1) return fs.front();
    return conjunction(std::move(fs));
  }
  /// The constant true, encoded as (= empty empty).
  static Formula truth() { return atom(Atom::eq(Term::empty(), Term::empty())); }

  FormulaKind kind() const { return node_->kind; }
  const Atom& as_atom() const { return node_->atom; }
  std::span<const Formula> children() const { return node_->children; }
  const Formula& child(std::size_t i) const { return node_->children.at(i); }

  friend bool operator==(const Formula& a, const Formula& b) {
    if (a.node_ == b.node_) return true;
    if (a.kind() != b.kind()) return false;
    if (a.kind() == FormulaKind::Atom) return a.as_atom() == b.as_atom();
    return std::ranges::equal(a.children(), b.children());
  }

 private:
  struct Node {
    FormulaKind kind = FormulaKind::Atom;
    Atom atom;
    std::vector<Formula> children;
  };
  static Formula nary(FormulaKind k, std::vector<Formula> fs) {
    if (fs.empty())
      throw InvariantViolation(std::string(k == FormulaKind::And ? "and" : "or") +
                               " needs at least one child");
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->children = std::move(fs);
    return Formula(std::move(n));
  }
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// A parsed input file: the conjunction of `asserts`, plus options.
struct Script {
  std::vector<Formula> asserts;
  std::vector<std::pair<std::string, std::string>> options;

  Formula conjunction() const {
    if (asserts.empty()) return Formula::truth();
    if (asserts.size() == 1) return asserts.front();
    return Formula::conjunction(asserts);
  }
  const std::string* option(std::string_view key) const {
    for (const auto& [k, v] : options)
      if (k == key) return &v;
    return nullptr;
  }
};

// ---------------------------------------------------------------------------
// Printing

inline void print_term(std::string& out, const Term& t) {
  switch (t.op()) {
    case Op::Var: out += t.variable().name; return;
    case Op::Empty: out += "empty"; return;
    case Op::Const: out += to_string(t.value()); return;
    default:
      out += '(';
      out += op_keyword(t.op());
      for (const auto& a : t.args()) {
        out += ' ';
        print_term(out, a);
      }
      out += ')';
  }
}

inline std::string print_term(const Term& t) {
  std::string s;
  print_term(s, t);
  return s;
}

inline void print_atom(std::string& out, const Atom& a) {
  out += '(';
  out += pred_keyword(a.pred);
  for (const auto& t : a.args) {
    out += ' ';
    print_term(out, t);
  }
  out += ')';
}

inline std::string print_atom(const Atom& a) {
  std::string s;
  print_atom(s, a);
  return s;
}

inline std::string print_literal(const Literal& l) {
  std::string s = l.positive ? "" : "(not ";
  print_atom(s, l.atom);
  if (!l.positive) s += ')';
  return s;
}

inline void print_formula(std::string& out, const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Atom: print_atom(out, f.as_atom()); return;
    case FormulaKind::Not:
      out += "(not ";
      print_formula(out, f.child(0));
      out += ')';
      return;
    case FormulaKind::And:
    case FormulaKind::Or:
      out += f.kind() == FormulaKind::And ? "(and" : "(or";
      for (const auto& c : f.children()) {
        out += ' ';
        print_formula(out, c);
      }
      out += ')';
      return;
  }
}

inline std::string print_formula(const Formula& f) {
  std::string s;
  print_formula(s, f);
  return s;
}

inline std::string print_script(const Script& s) {
  std::string out;
  for (const auto& [k, v] : s.options) out += "(set-option :" + k + " " + v + ")\n";
  for (const auto& f : s.asserts) {
    out += "(assert ";
    print_formula(out, f);
    out += ")\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Variables

/// Ordered set of variables, preserving first-insertion order.
class VarList {
 public:
  bool insert(const Variable& v) {
    if (!seen_.insert(v.name).second) return false;
    order_.push_back(v);
    return true;
  }
  bool contains(const Variable& v) const { return seen_.count(v.name) != 0; }
  const std::vector<Variable>& items() const { return order_; }
  std::size_t size() const { return order_.size(); }
  auto begin() const { return order_.begin(); }
  auto end() const { return order_.end(); }

 private:
  std::vector<Variable> order_;
  std::unordered_set<std::string> seen_;
};

inline void collect_vars(const Term& t, VarList& out) {
  if (t.is_var()) {
    out.insert(t.variable());
    return;
  }
  for (const auto& a : t.args()) collect_vars(a, out);
}

inline void collect_vars(const Atom& a, VarList& out) {
  for (const auto& t : a.args) collect_vars(t, out);
}

inline void collect_vars(const Formula& f, VarList& out) {
  if (f.kind() == FormulaKind::Atom) {
    collect_vars(f.as_atom(), out);
    return;
  }
  for (const auto& c : f.children()) collect_vars(c, out);
}

/// Variables of `f` in first-occurrence order.
inline std::vector<Variable> free_vars(const Formula& f) {
  VarList vl;
  collect_vars(f, vl);
  return vl.items();
}

inline std::vector<Variable> free_vars(const Atom& a) {
  VarList vl;
  collect_vars(a, vl);
  return vl.items();
}

// ---------------------------------------------------------------------------
// Theory classification

enum class Theory : std::uint8_t { MLS, MLS_EXT, LRA, LIST, SHARED };

inline std::string_view theory_name(Theory t) {
  switch (t) {
    case Theory::MLS: return "MLS";
    case Theory::MLS_EXT: return "MLS_EXT";
    case Theory::LRA: return "LRA";
    case Theory::LIST: return "LIST";
    case Theory::SHARED: return "SHARED";
  }
  return "";
}

namespace detail {

struct SignatureUse {
  bool set = false;
  bool ext = false;
  bool arith = false;
  bool list = false;
};

inline void scan_ops(const Term& t, SignatureUse& u) {
  const Op op = t.op();
  if (is_mls_op(op)) u.set = true;
  if (is_ext_op(op)) u.set = u.ext = true;
  if (is_arith_op(op)) u.arith = true;
  if (is_list_op(op)) u.list = true;
  for (const auto& a : t.args()) scan_ops(a, u);
}

}  // namespace detail

/// Theory a pure atom belongs to. Throws MixedAtomError when operators from
/// two signatures meet in one atom.
inline Theory classify_atom(const Atom& a) {
  detail::SignatureUse u;
  switch (a.pred) {
    case Pred::In:
    case Pred::Subset: u.set = true; break;
    case Pred::Leq: u.arith = true; break;
    case Pred::IsAtom: u.list = true; break;
    case Pred::Eq: break;
  }
  for (const auto& t : a.args) detail::scan_ops(t, u);

  std::vector<std::string> used;
  if (u.set) used.emplace_back(u.ext ? "MLS_EXT" : "MLS");
  if (u.arith) used.emplace_back("LRA");
  if (u.list) used.emplace_back("LIST");
  if (used.size() > 1) throw MixedAtomError(used[0], used[1]);
  if (u.set) return u.ext ? Theory::MLS_EXT : Theory::MLS;
  if (u.arith) return Theory::LRA;
  if (u.list) return Theory::LIST;
  return Theory::SHARED;  // (= x y) between bare variables
}

}  // namespace setsyl

template <>
struct std::hash<setsyl::Variable> {
  std::size_t operator()(const setsyl::Variable& v) const noexcept {
    return std::hash<std::string>{}(v.name);
  }
};
