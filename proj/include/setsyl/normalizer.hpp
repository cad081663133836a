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
/// DNF splitting and rewriting of MLS literals into the two normal forms
/// `x ∈ y` and `x = y ∖ z`.

#pragma once

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "setsyl/error.hpp"
#include "setsyl/formula.hpp"

namespace setsyl {

struct Membership {
  Variable x, y;
  friend bool operator==(const Membership&, const Membership&) = default;
};

/// x = y ∖ z
struct Difference {
  Variable x, y, z;
  friend bool operator==(const Difference&, const Difference&) = default;
};

class NormalizedConjunction {
 public:
  const std::vector<Membership>& memberships() const { return memberships_; }
  const std::vector<Difference>& differences() const { return differences_; }
  const std::vector<Variable>& vars() const { return vars_.items(); }
  bool has_var(const Variable& v) const { return vars_.contains(v); }

  /// Returns false when the literal was already present.
  bool add_membership(const Variable& x, const Variable& y) {
    Membership m{x, y};
    if (std::find(memberships_.begin(), memberships_.end(), m) != memberships_.end()) return false;
    memberships_.push_back(m);
    vars_.insert(x);
    vars_.insert(y);
    return true;
  }

  bool add_difference(const Variable& x, const Variable& y, const Variable& z) {
    Difference d{x, y, z};
    if (std::find(differences_.begin(), differences_.end(), d) != differences_.end()) return false;
    differences_.push_back(d);
    vars_.insert(x);
    vars_.insert(y);
    vars_.insert(z);
    return true;
  }

  std::size_t size() const { return memberships_.size() + differences_.size(); }

  LiteralConjunction literals() const {
    LiteralConjunction out;
    for (const auto& m : memberships_)
      out.push_back(Literal{Atom::in(Term::var(m.x), Term::var(m.y)), true});
    for (const auto& d : differences_)
      out.push_back(Literal{
          Atom::eq(Term::var(d.x), Term::apply(Op::Setminus, Term::var(d.y), Term::var(d.z))),
          true});
    return out;
  }

  Formula to_formula() const { return Formula::conjunction_of(literals()); }

  /// One `(assert ...)` line per literal.
  std::string print() const {
    std::string out;
    for (const auto& l : literals()) out += "(assert " + print_literal(l) + ")\n";
    return out;
  }

  friend bool operator==(const NormalizedConjunction& a, const NormalizedConjunction& b) {
    return a.memberships_ == b.memberships_ && a.differences_ == b.differences_;
  }

 private:
  std::vector<Membership> memberships_;
  std::vector<Difference> differences_;
  VarList vars_;
};

struct NormalizedSize {
  std::size_t nvars = 0;
  std::size_t nlits = 0;
  friend bool operator==(const NormalizedSize&, const NormalizedSize&) = default;
};

inline NormalizedSize normalized_size(const NormalizedConjunction& nc) {
  return {nc.vars().size(), nc.size()};
}

// ---------------------------------------------------------------------------
// DNF

namespace detail {

inline void require_mls(const Atom& a) {
  if (a.pred == Pred::Leq || a.pred == Pred::IsAtom)
    throw UnsupportedAtomError("atom " + print_atom(a) + " is outside MLS");
  Theory t = classify_atom(a);
  if (t != Theory::MLS && t != Theory::SHARED)
    throw UnsupportedAtomError("atom " + print_atom(a) + " belongs to " +
                               std::string(theory_name(t)) + ", not MLS");
}

inline std::vector<LiteralConjunction> dnf(const Formula& f, bool positive, bool mls_only = true) {
  switch (f.kind()) {
    case FormulaKind::Atom:
      if (mls_only) require_mls(f.as_atom());
      return {LiteralConjunction{Literal{f.as_atom(), positive}}};
    case FormulaKind::Not: return dnf(f.child(0), !positive, mls_only);
    case FormulaKind::And:
    case FormulaKind::Or: break;
  }
  const bool conj = (f.kind() == FormulaKind::And) == positive;
  std::vector<LiteralConjunction> out;
  if (!conj) {
    for (const auto& c : f.children()) {
      auto part = dnf(c, positive, mls_only);
      out.insert(out.end(), part.begin(), part.end());
    }
    return out;
  }
  out.push_back({});
  for (const auto& c : f.children()) {
    auto part = dnf(c, positive, mls_only);
    std::vector<LiteralConjunction> next;
    next.reserve(out.size() * part.size());
    for (const auto& a : out)
      for (const auto& b : part) {
        LiteralConjunction merged = a;
        for (const auto& l : b)
          if (std::find(merged.begin(), merged.end(), l) == merged.end()) merged.push_back(l);
        next.push_back(std::move(merged));
      }
    out = std::move(next);
  }
  return out;
}

}  // namespace detail

/// Negations pushed to atoms, then distributed into a disjunction of
/// literal conjunctions. Purely syntactic: contradictory branches survive.
inline std::vector<LiteralConjunction> dnf_split(const Formula& f) { return detail::dnf(f, true); }

// ---------------------------------------------------------------------------
// Rewriting

namespace detail {

/// Issues `_g1, _g2, ...` (or another prefix) above every such name already present.
class FreshNames {
 public:
  explicit FreshNames(std::string_view prefix = kFreshPrefix) : prefix_(prefix) {}

  void reserve(const Variable& v) {
    std::string_view n = v.name;
    if (!n.starts_with(prefix_)) return;
    n.remove_prefix(prefix_.size());
    std::size_t k = 0;
    auto [p, ec] = std::from_chars(n.data(), n.data() + n.size(), k);
    if (ec == std::errc() && p == n.data() + n.size() && k >= next_) next_ = k + 1;
  }

  Variable next() { return Variable(prefix_ + std::to_string(next_++)); }

 private:
  std::string prefix_;
  std::size_t next_ = 1;
};

// Flat literal shapes, after purification of nested terms.
struct Flat {
  enum class Kind { In, Eq, EqEmpty, EqOp, Subset } kind;
  bool positive;
  Variable x, y, z;
  Op op = Op::Var;  // for EqOp
};

class Normalizer {
 public:
  explicit Normalizer(const LiteralConjunction& lits) {
    VarList vs;
    for (const auto& l : lits) collect_vars(l.atom, vs);
    for (const auto& v : vs) fresh_.reserve(v);
  }

  NormalizedConjunction run(const LiteralConjunction& lits) {
    for (const auto& l : lits) {
      require_mls(l.atom);
      std::vector<Flat> flats;
      flatten(l, flats);
      for (const auto& f : flats) rewrite(f);
    }
    return std::move(out_);
  }

 private:
  Variable varify(const Term& t, std::vector<Flat>& defs) {
    if (t.is_var()) return t.variable();
    Variable g = fresh_.next();
    define(g, t, defs);
    return g;
  }

  // g = t, with t made flat.
  void define(const Variable& g, const Term& t, std::vector<Flat>& defs) {
    if (t.is_var()) {
      defs.push_back(Flat{Flat::Kind::Eq, true, g, t.variable(), {}});
    } else if (t.op() == Op::Empty) {
      defs.push_back(Flat{Flat::Kind::EqEmpty, true, g, {}, {}});
    } else {
      Flat f{Flat::Kind::EqOp, true, g, {}, {}, t.op()};
      std::vector<Flat> inner;
      f.y = varify(t.arg(0), inner);
      f.z = varify(t.arg(1), inner);
      defs.push_back(f);
      defs.insert(defs.end(), inner.begin(), inner.end());
    }
  }

  void flatten(const Literal& l, std::vector<Flat>& out) {
    const Atom& a = l.atom;
    std::vector<Flat> defs;
    if (a.pred == Pred::Eq) {
      Term lhs = a.lhs();
      Term rhs = a.rhs();
      if (!lhs.is_var() && rhs.is_var()) std::swap(lhs, rhs);
      Variable x = varify(lhs, defs);
      Flat f{Flat::Kind::Eq, l.positive, x, {}, {}};
      if (rhs.is_var()) {
        f.y = rhs.variable();
      } else if (rhs.op() == Op::Empty) {
        f.kind = Flat::Kind::EqEmpty;
      } else {
        f.kind = Flat::Kind::EqOp;
        f.op = rhs.op();
        f.y = varify(rhs.arg(0), defs);
        f.z = varify(rhs.arg(1), defs);
      }
      out.push_back(f);
    } else {
      Variable x = varify(a.lhs(), defs);
      Variable y = varify(a.rhs(), defs);
      out.push_back(Flat{a.pred == Pred::In ? Flat::Kind::In : Flat::Kind::Subset, l.positive, x, y, {}});
    }
    out.insert(out.end(), defs.begin(), defs.end());
  }

  void emit_in(const Variable& x, const Variable& y) { out_.add_membership(x, y); }
  void emit_diff(const Variable& x, const Variable& y, const Variable& z) {
    out_.add_difference(x, y, z);
  }

  void rewrite(const Flat& f) {
    using K = Flat::Kind;
    switch (f.kind) {
      case K::In:
        if (f.positive) {
          emit_in(f.x, f.y);
        } else {
          // (3) x ∉ y  ->  x ∈ w ∧ w = w ∖ y
          Variable w = fresh_.next();
          emit_in(f.x, w);
          emit_diff(w, w, f.y);
        }
        return;
      case K::EqEmpty:
        if (f.positive) {
          // (1) x = ∅  ->  x = x ∖ x
          emit_diff(f.x, f.x, f.x);
        } else {
          // (2) x ≠ ∅  ->  w ∈ x
          emit_in(fresh_.next(), f.x);
        }
        return;
      case K::Eq:
        if (f.positive) {
          // (4) x = y  ->  x = y ∖ e ∧ e = e ∖ e
          Variable e = fresh_.next();
          emit_diff(f.x, f.y, e);
          emit_diff(e, e, e);
        } else {
          disequality(f.x, f.y);
        }
        return;
      case K::Subset:
        if (f.positive) {
          // (7) x ⊆ y  ->  x = y ∩ x
          rewrite(Flat{K::EqOp, true, f.x, f.y, f.x, Op::Inter});
        } else {
          rewrite(Flat{K::EqOp, false, f.x, f.x, f.y, Op::Inter});
        }
        return;
      case K::EqOp: break;
    }
    if (!f.positive) {
      // (9) x ≠ y ⋆ z  ->  x ≠ w ∧ w = y ⋆ z
      Variable w = fresh_.next();
      disequality(f.x, w);
      rewrite(Flat{K::EqOp, true, w, f.y, f.z, f.op});
      return;
    }
    switch (f.op) {
      case Op::Setminus: emit_diff(f.x, f.y, f.z); return;
      case Op::Inter: {
        // (5) x = y ∩ z  ->  w = y ∖ z ∧ x = y ∖ w
        Variable w = fresh_.next();
        emit_diff(w, f.y, f.z);
        emit_diff(f.x, f.y, w);
        return;
      }
      case Op::Union: {
        // (6) x = y ∪ z  ->  w = x ∖ y ∧ w = z ∖ y ∧ e = y ∖ x ∧ e = e ∖ e
        Variable w = fresh_.next();
        Variable e = fresh_.next();
        emit_diff(w, f.x, f.y);
        emit_diff(w, f.z, f.y);
        emit_diff(e, f.y, f.x);
        emit_diff(e, e, e);
        return;
      }
      default: throw InvariantViolation("unexpected operator in flat literal");
    }
  }

  // (8) x ≠ y  ->  w = x ∪ y ∧ z = x ∩ y ∧ v ∈ w ∧ v ∉ z
  void disequality(const Variable& x, const Variable& y) {
    Variable w = fresh_.next();
    Variable z = fresh_.next();
    Variable v = fresh_.next();
    rewrite(Flat{Flat::Kind::EqOp, true, w, x, y, Op::Union});
    rewrite(Flat{Flat::Kind::EqOp, true, z, x, y, Op::Inter});
    rewrite(Flat{Flat::Kind::In, true, v, w, {}});
    rewrite(Flat{Flat::Kind::In, false, v, z, {}});
  }

  FreshNames fresh_;
  NormalizedConjunction out_;
};

}  // namespace detail

/// Rewrites an MLS literal conjunction into normal literals. Nested terms are
/// first named by fresh `_g` variables; all introduced variables are
/// existential, so the result is equisatisfiable with the input.
inline NormalizedConjunction normalize(const LiteralConjunction& conj) {
  detail::Normalizer n(conj);
  return n.run(conj);
}

/// dnf_split followed by normalize on each disjunct.
inline std::vector<NormalizedConjunction> normalize_formula(const Formula& f) {
  std::vector<NormalizedConjunction> out;
  for (const auto& c : dnf_split(f)) out.push_back(normalize(c));
  return out;
}

}  // namespace setsyl
