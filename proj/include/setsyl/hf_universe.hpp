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
/// Set assignments, evaluation of set-theoretic atoms and formulae, and the
/// bounded cumulative hierarchy.

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "setsyl/error.hpp"
#include "setsyl/formula.hpp"
#include "setsyl/hf_set.hpp"

namespace setsyl {

/// Finite map from variables to HF sets.
class SetAssignment {
 public:
  SetAssignment() = default;
  SetAssignment(std::initializer_list<std::pair<const Variable, HFSet>> init) : map_(init) {}

  void set(const Variable& v, HFSet s) { map_[v] = std::move(s); }
  void set(const std::string& name, HFSet s) { map_[Variable(name)] = std::move(s); }

  const HFSet& at(const Variable& v) const {
    auto it = map_.find(v);
    if (it == map_.end()) throw UnboundVariableError(v.name);
    return it->second;
  }
  const HFSet& at(const std::string& name) const { return at(Variable(name)); }

  bool contains(const Variable& v) const { return map_.count(v) != 0; }
  std::size_t size() const { return map_.size(); }
  bool empty() const { return map_.empty(); }
  auto begin() const { return map_.begin(); }
  auto end() const { return map_.end(); }

  /// rk(M): maximum rank over assigned values, 0 for the empty domain.
  std::size_t rank() const {
    std::size_t r = 0;
    for (const auto& [v, s] : map_) r = std::max(r, s.rank());
    return r;
  }

  /// Copy restricted to the given variables (missing ones are skipped).
  SetAssignment restricted_to(const std::vector<Variable>& vars) const {
    SetAssignment out;
    for (const auto& v : vars) {
      auto it = map_.find(v);
      if (it != map_.end()) out.map_.emplace(v, it->second);
    }
    return out;
  }

  friend bool operator==(const SetAssignment&, const SetAssignment&) = default;

 private:
  std::map<Variable, HFSet> map_;
};

// ---------------------------------------------------------------------------
// Evaluation

namespace detail {

inline HFSet kuratowski_pair(const HFSet& a, const HFSet& b) {
  return hf({HFSet::singleton(a), hf({a, b})});
}

inline HFSet power_set(const HFSet& s) {
  if (s.size() > 20) throw ResourceLimitError("powerset of a set with more than 20 members");
  const auto m = s.members();
  std::vector<HFSet> subsets;
  subsets.reserve(std::size_t{1} << m.size());
  for (std::uint32_t mask = 0; mask < (1u << m.size()); ++mask) {
    std::vector<HFSet> sub;
    for (std::size_t i = 0; i < m.size(); ++i)
      if ((mask >> i) & 1u) sub.push_back(m[i]);
    subsets.push_back(hf(std::move(sub)));
  }
  return hf(std::move(subsets));
}

}  // namespace detail

/// Value of a set term, or nullopt when it is undefined (⋂ of the empty set).
/// `lookup` maps a variable to its value.
template <typename Lookup>
std::optional<HFSet> eval_set_term(const Term& t, const Lookup& lookup) {
  auto sub = [&](std::size_t i) { return eval_set_term(t.arg(i), lookup); };
  switch (t.op()) {
    case Op::Var: return lookup(t.variable());
    case Op::Empty: return HFSet();
    case Op::Union:
    case Op::Inter:
    case Op::Setminus:
    case Op::Cross:
    case Op::UCross: {
      auto a = sub(0);
      auto b = sub(1);
      if (!a || !b) return std::nullopt;
      if (t.op() == Op::Union) return set_union(*a, *b);
      if (t.op() == Op::Inter) return set_intersection(*a, *b);
      if (t.op() == Op::Setminus) return set_difference(*a, *b);
      std::vector<HFSet> out;
      for (const auto& p : a->members())
        for (const auto& q : b->members())
          out.push_back(t.op() == Op::Cross ? detail::kuratowski_pair(p, q) : hf({p, q}));
      return hf(std::move(out));
    }
    case Op::Single: {
      auto a = sub(0);
      if (!a) return std::nullopt;
      return HFSet::singleton(*a);
    }
    case Op::Pow: {
      auto a = sub(0);
      if (!a) return std::nullopt;
      return detail::power_set(*a);
    }
    case Op::BigUnion: {
      auto a = sub(0);
      if (!a) return std::nullopt;
      HFSet acc;
      for (const auto& m : a->members()) acc = set_union(acc, m);
      return acc;
    }
    case Op::BigInter: {
      auto a = sub(0);
      if (!a || a->empty()) return std::nullopt;
      HFSet acc = a->members().front();
      for (const auto& m : a->members()) acc = set_intersection(acc, m);
      return acc;
    }
    case Op::Const:
    case Op::Plus:
    case Op::Neg:
    case Op::Cons:
    case Op::Car:
    case Op::Cdr: break;
  }
  throw UnsupportedAtomError("term " + print_term(t) + " is not a set term");
}

template <typename Lookup>
bool eval_set_atom(const Atom& a, const Lookup& lookup) {
  if (a.pred == Pred::Leq || a.pred == Pred::IsAtom)
    throw UnsupportedAtomError("atom " + print_atom(a) + " is not a set-theory atom");
  auto l = eval_set_term(a.lhs(), lookup);
  auto r = eval_set_term(a.rhs(), lookup);
  // An atom mentioning an undefined ⋂ is false.
  if (!l || !r) return false;
  switch (a.pred) {
    case Pred::In: return r->contains(*l);
    case Pred::Eq: return *l == *r;
    case Pred::Subset: return l->is_subset_of(*r);
    default: break;
  }
  return false;
}

/// Truth value of a set-theory atom under M.
inline bool eval_atom(const Atom& a, const SetAssignment& m) {
  return eval_set_atom(a, [&](const Variable& v) -> const HFSet& { return m.at(v); });
}

inline bool eval_literal(const Literal& l, const SetAssignment& m) {
  return eval_atom(l.atom, m) == l.positive;
}

inline bool eval_formula(const Formula& f, const SetAssignment& m) {
  switch (f.kind()) {
    case FormulaKind::Atom: return eval_atom(f.as_atom(), m);
    case FormulaKind::Not: return !eval_formula(f.child(0), m);
    case FormulaKind::And:
      return std::all_of(f.children().begin(), f.children().end(),
                         [&](const Formula& c) { return eval_formula(c, m); });
    case FormulaKind::Or:
      return std::any_of(f.children().begin(), f.children().end(),
                         [&](const Formula& c) { return eval_formula(c, m); });
  }
  return false;
}

// ---------------------------------------------------------------------------
// Bounded universe

inline constexpr std::size_t kMaxRankBound = 4;

/// Number of HF sets of rank <= r: 1, 2, 4, 16, 65536.
inline std::uint32_t universe_size(std::size_t rank_bound) {
  static constexpr std::uint32_t kSizes[] = {1, 2, 4, 16, 65536};
  if (rank_bound > kMaxRankBound)
    throw BoundTooLargeError("rank bound " + std::to_string(rank_bound) + " exceeds " +
                             std::to_string(kMaxRankBound));
  return kSizes[rank_bound];
}

/// All HF sets of rank <= rank_bound, in canonical order.
inline std::vector<HFSet> enumerate_universe(std::size_t rank_bound) {
  const std::uint32_t n = universe_size(rank_bound);
  // Ackermann codes below n enumerate exactly the sets of rank <= rank_bound.
  std::vector<HFSet> out;
  out.reserve(n);
  if (rank_bound == 0) {
    out.emplace_back();
    return out;
  }
  const auto lower = enumerate_universe(rank_bound - 1);
  const std::size_t k = lower.size();
  for (std::uint32_t mask = 0; mask < n; ++mask) {
    std::vector<HFSet> members;
    for (std::size_t i = 0; i < k; ++i)
      if ((mask >> i) & 1u) members.push_back(lower[i]);
    out.push_back(hf(std::move(members)));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace setsyl
