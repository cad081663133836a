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
/// Satisfiability of normalized MLS conjunctions with explicit HF models.
///
/// A place is a Boolean valuation of the variables compatible with every
/// `x = y ∖ z`; each element of a model realizes one. The solver guesses
/// which element variables (left operands of `∈`) denote equal sets, gives
/// each class a place, orders classes so that `∈` is well founded, pads with
/// high-rank junk elements to keep classes apart, and checks the resulting
/// assignment by evaluation.

#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "setsyl/error.hpp"
#include "setsyl/formula.hpp"
#include "setsyl/hf_set.hpp"
#include "setsyl/hf_universe.hpp"
#include "setsyl/normalizer.hpp"

namespace setsyl {

/// Valuation over the variables of a conjunction, indexed as in nc.vars().
struct Place {
  std::uint64_t bits = 0;

  bool operator[](std::size_t i) const { return (bits >> i) & 1u; }
  friend bool operator==(const Place&, const Place&) = default;
};

inline void check_place_capacity(const NormalizedConjunction& nc) {
  if (nc.vars().size() > 64)
    throw ResourceLimitError("solver supports at most 64 variables, got " +
                             std::to_string(nc.vars().size()));
}

namespace detail {

/// Tiny DPLL over the place clauses {¬x∨y, ¬x∨¬z, x∨¬y∨z} of each x = y∖z,
/// with optional variable identifications and fixed values.
class PlaceSat {
 public:
  explicit PlaceSat(const NormalizedConjunction& nc) : n_(nc.vars().size()) {
    check_place_capacity(nc);
    for (std::size_t i = 0; i < n_; ++i) index_.emplace(nc.vars()[i].name, static_cast<int>(i));
    for (const auto& d : nc.differences()) {
      int x = index_.at(d.x.name), y = index_.at(d.y.name), z = index_.at(d.z.name);
      base_.push_back({neg(x), pos(y), kNone});
      base_.push_back({neg(x), neg(z), kNone});
      base_.push_back({pos(x), neg(y), pos(z)});
    }
  }

  std::size_t size() const { return n_; }
  int index(const Variable& v) const { return index_.at(v.name); }

  /// `rep[i]` names the representative of variable i; `fixed_mask` / `fixed_val`
  /// pin values. Returns the false-first lexicographically least solution.
  std::optional<std::uint64_t> solve(const std::vector<int>& rep, std::uint64_t fixed_mask,
                                     std::uint64_t fixed_val) const {
    std::optional<std::uint64_t> out;
    run(rep, fixed_mask, fixed_val, [&](std::uint64_t m) {
      out = m;
      return true;
    });
    return out;
  }

  /// Visits every solution in false-before-true order; stop by returning true.
  void enumerate(const std::vector<int>& rep, std::uint64_t fixed_mask, std::uint64_t fixed_val,
                 const std::function<bool(std::uint64_t)>& visit) const {
    run(rep, fixed_mask, fixed_val, visit);
  }

  std::vector<int> identity() const {
    std::vector<int> r(n_);
    std::iota(r.begin(), r.end(), 0);
    return r;
  }

 private:
  static constexpr int kNone = -1;
  using Clause = std::array<int, 3>;
  static int pos(int v) { return 2 * v; }
  static int neg(int v) { return 2 * v + 1; }

  template <typename Visit>
  void run(const std::vector<int>& rep, std::uint64_t fixed_mask, std::uint64_t fixed_val,
           Visit&& visit) const {
    std::vector<Clause> clauses;
    clauses.reserve(base_.size());
    for (const auto& c : base_) {
      Clause r{kNone, kNone, kNone};
      bool taut = false;
      for (int k = 0; k < 3; ++k) {
        if (c[k] == kNone) continue;
        r[k] = 2 * rep[c[k] / 2] + (c[k] & 1);
      }
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
          if (r[a] != kNone && r[b] != kNone && (r[a] ^ 1) == r[b]) taut = true;
      if (!taut) clauses.push_back(r);
    }
    std::vector<std::int8_t> a(n_, -1);
    for (std::size_t i = 0; i < n_; ++i) {
      if (!((fixed_mask >> i) & 1u)) continue;
      std::int8_t want = static_cast<std::int8_t>((fixed_val >> i) & 1u);
      int r = rep[i];
      if (a[r] >= 0 && a[r] != want) return;
      a[r] = want;
    }
    std::vector<int> order;
    for (std::size_t i = 0; i < n_; ++i)
      if (rep[i] == static_cast<int>(i)) order.push_back(static_cast<int>(i));
    dpll(clauses, order, a, rep, visit);
  }

  static bool propagate(const std::vector<Clause>& clauses, std::vector<std::int8_t>& a) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& c : clauses) {
        int open = 0;
        int unit = kNone;
        bool sat = false;
        for (int l : c) {
          if (l == kNone) continue;
          std::int8_t v = a[l / 2];
          if (v < 0) {
            ++open;
            unit = l;
          } else if ((v == 1) == ((l & 1) == 0)) {
            sat = true;
            break;
          }
        }
        if (sat) continue;
        if (open == 0) return false;
        if (open == 1) {
          a[unit / 2] = (unit & 1) ? 0 : 1;
          changed = true;
        }
      }
    }
    return true;
  }

  template <typename Visit>
  bool dpll(const std::vector<Clause>& clauses, const std::vector<int>& order,
            std::vector<std::int8_t> a, const std::vector<int>& rep, Visit& visit) const {
    if (!propagate(clauses, a)) return false;
    int next = kNone;
    for (int v : order)
      if (a[v] < 0) {
        next = v;
        break;
      }
    if (next == kNone) {
      std::uint64_t m = 0;
      for (std::size_t i = 0; i < n_; ++i)
        if (a[rep[i]] == 1) m |= 1ull << i;
      return visit(m);
    }
    for (std::int8_t val : {std::int8_t{0}, std::int8_t{1}}) {
      auto b = a;
      b[next] = val;
      if (dpll(clauses, order, std::move(b), rep, visit)) return true;
    }
    return false;
  }

  std::size_t n_;
  std::map<std::string, int> index_;
  std::vector<Clause> base_;
};

}  // namespace detail

/// All places of nc, in canonical variable order with false before true.
inline std::vector<Place> enumerate_places(const NormalizedConjunction& nc) {
  detail::PlaceSat sat(nc);
  std::vector<Place> out;
  sat.enumerate(sat.identity(), 0, 0, [&](std::uint64_t m) {
    out.push_back(Place{m});
    return false;
  });
  return out;
}

// ---------------------------------------------------------------------------

struct JunkElement {
  Place place;
  std::size_t copy = 0;
};

struct SolverWitness {
  /// Equivalence classes of element variables; the first member is the representative.
  std::vector<std::vector<Variable>> merge;
  /// Place of each class, parallel to `merge`.
  std::vector<Place> sigma;
  std::vector<JunkElement> junk;
  /// Class indices, ∈-minimal first.
  std::vector<std::size_t> topo;
};

/// Rank offset of the first junk element, and the spacing between junk ranks.
inline std::size_t junk_base(const NormalizedConjunction& nc) { return nc.vars().size() + 4; }

inline HFSet junk_value(const NormalizedConjunction& nc, std::size_t j, std::size_t copy = 0) {
  const std::size_t b = junk_base(nc);
  return nested_singleton(b + j * b + copy);
}

/// Mu := {M(X) : σ(X)(u)} ∪ {junk j : place_j(u)}, class values built in topo order.
inline SetAssignment build_model(const NormalizedConjunction& nc, const SolverWitness& w) {
  const auto& vars = nc.vars();
  const std::size_t n = vars.size();
  check_place_capacity(nc);
  if (w.sigma.size() != w.merge.size() || w.topo.size() != w.merge.size())
    throw InvariantViolation("witness tables have mismatched sizes");
  std::map<std::string, std::size_t> idx;
  for (std::size_t i = 0; i < n; ++i) idx.emplace(vars[i].name, i);
  auto index_of = [&](const Variable& v) {
    auto it = idx.find(v.name);
    if (it == idx.end()) throw InvariantViolation("witness mentions unknown variable " + v.name);
    return it->second;
  };

  std::vector<HFSet> junk;
  for (std::size_t j = 0; j < w.junk.size(); ++j) junk.push_back(junk_value(nc, j, w.junk[j].copy));

  std::vector<std::optional<HFSet>> class_value(w.merge.size());
  std::vector<bool> seen(w.merge.size(), false);
  auto members_of = [&](std::size_t u) {
    std::vector<HFSet> out;
    for (std::size_t c = 0; c < w.merge.size(); ++c) {
      if (!w.sigma[c][u]) continue;
      if (!class_value[c])
        throw InvariantViolation("witness order places a member after its container");
      out.push_back(*class_value[c]);
    }
    for (std::size_t j = 0; j < w.junk.size(); ++j)
      if (w.junk[j].place[u]) out.push_back(junk[j]);
    return hf(std::move(out));
  };

  for (std::size_t c : w.topo) {
    if (c >= w.merge.size() || seen[c]) throw InvariantViolation("witness topo is not a permutation");
    seen[c] = true;
    if (w.merge[c].empty()) throw InvariantViolation("empty merge class");
    for (const auto& v : w.merge[c])
      if (w.sigma[c][index_of(v)]) throw InvariantViolation("class " + v.name + " is a member of itself");
    class_value[c] = members_of(index_of(w.merge[c].front()));
  }
  SetAssignment m;
  for (std::size_t u = 0; u < n; ++u) m.set(vars[u], members_of(u));
  for (std::size_t c = 0; c < w.merge.size(); ++c)
    for (const auto& v : w.merge[c])
      if (!(m.at(v) == *class_value[c]))
        throw InvariantViolation("merged variable " + v.name + " departs from its class value");
  return m;
}

inline bool satisfies(const NormalizedConjunction& nc, const SetAssignment& m) {
  for (const auto& l : nc.literals())
    if (!eval_literal(l, m)) return false;
  return true;
}

struct SolveOptions {
  std::uint64_t budget = 10'000'000;
};

struct SolveResult {
  bool sat = false;
  SetAssignment model;
  SolverWitness witness;
  std::uint64_t candidates = 0;
  explicit operator bool() const { return sat; }
};

namespace detail {

/// Set partitions of {0..k-1} as restricted growth strings, fewest blocks first.
inline std::vector<std::vector<int>> partitions_coarsest_first(std::size_t k) {
  std::vector<std::vector<int>> all;
  std::vector<int> a(k, 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int max_block) {
    if (i == k) {
      all.push_back(a);
      return;
    }
    for (int b = 0; b <= max_block + 1; ++b) {
      a[i] = b;
      rec(i + 1, std::max(max_block, b));
    }
  };
  if (k == 0) return {std::vector<int>{}};
  a[0] = 0;
  rec(1, 0);
  auto blocks = [](const std::vector<int>& p) { return *std::max_element(p.begin(), p.end()) + 1; };
  std::stable_sort(all.begin(), all.end(), [&](const auto& x, const auto& y) { return blocks(x) < blocks(y); });
  return all;
}

class MlsSolver {
 public:
  MlsSolver(const NormalizedConjunction& nc, const SolveOptions& opt)
      : nc_(nc), opt_(opt), sat_(nc) {
    const auto& vars = nc.vars();
    n_ = vars.size();
    std::vector<bool> is_elem(n_, false);
    for (const auto& m : nc.memberships()) is_elem[sat_.index(m.x)] = true;
    for (std::size_t i = 0; i < n_; ++i)
      if (is_elem[i]) elems_.push_back(static_cast<int>(i));
    for (const auto& m : nc.memberships()) member_pairs_.emplace_back(sat_.index(m.x), sat_.index(m.y));
  }

  SolveResult run() {
    SolveResult out;
    if (nc_.size() == 0) {
      out.sat = true;
      for (const auto& v : nc_.vars()) out.model.set(v, HFSet());
      return out;
    }
    for (const auto& part : partitions_coarsest_first(elems_.size())) {
      tick();
      if (auto w = try_partition(part)) {
        out.witness = std::move(*w);
        out.model = build_model(nc_, out.witness);
        if (!satisfies(nc_, out.model))
          throw InvariantViolation("constructed model fails evaluation");
        out.sat = true;
        break;
      }
    }
    out.candidates = candidates_;
    return out;
  }

 private:
  void tick() {
    if (++candidates_ > opt_.budget)
      throw ResourceLimitError("solver exceeded its budget of " + std::to_string(opt_.budget) +
                               " candidates");
  }

  std::optional<std::uint64_t> sat(std::uint64_t mask, std::uint64_t val) {
    auto key = std::make_pair(mask, val);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    tick();
    auto r = sat_.solve(rep_, mask, val);
    memo_.emplace(key, r);
    return r;
  }

  std::optional<SolverWitness> try_partition(const std::vector<int>& part) {
    const std::size_t k = part.empty() ? 0 : static_cast<std::size_t>(*std::max_element(part.begin(), part.end()) + 1);
    std::vector<std::uint64_t> cls(k, 0);
    for (std::size_t i = 0; i < part.size(); ++i) cls[part[i]] |= 1ull << elems_[i];
    std::vector<int> cls_of(n_, -1);
    for (std::size_t i = 0; i < part.size(); ++i) cls_of[elems_[i]] = part[i];

    // Self-membership inside a class can never be well founded.
    for (auto [x, y] : member_pairs_)
      if (cls_of[y] >= 0 && cls_of[y] == cls_of[x]) return std::nullopt;

    rep_ = sat_.identity();
    for (std::size_t i = 0; i < part.size(); ++i) {
      int first = elems_[std::find(part.begin(), part.end(), part[i]) - part.begin()];
      rep_[elems_[i]] = first;
    }
    memo_.clear();

    // Every pair of classes must be separable by some place.
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = a + 1; b < k; ++b)
        if (!separator(cls[a], cls[b])) return std::nullopt;

    std::vector<std::uint64_t> required(k, 0);
    for (auto [x, y] : member_pairs_) required[cls_of[x]] |= 1ull << y;

    std::uint64_t all_elems = 0;
    for (int e : elems_) all_elems |= 1ull << e;

    // Greedy from the ∈-maximal end: a class may contain only classes already
    // placed after it. Feasibility is monotone in that set, so greed is complete.
    std::vector<bool> placed(k, false);
    std::vector<Place> sigma(k);
    std::vector<std::size_t> order;
    std::uint64_t after = 0;
    while (order.size() < k) {
      bool progress = false;
      for (std::size_t c = 0; c < k; ++c) {
        if (placed[c]) continue;
        if ((required[c] & all_elems & ~after) != 0) continue;
        std::uint64_t zero = all_elems & ~after;
        auto p = sat(zero | required[c], required[c]);
        if (!p) continue;
        sigma[c] = Place{*p};
        placed[c] = true;
        order.push_back(c);
        after |= cls[c];
        progress = true;
        break;
      }
      if (!progress) return std::nullopt;
    }

    SolverWitness w;
    for (std::size_t c = 0; c < k; ++c) {
      std::vector<Variable> members;
      for (std::size_t i = 0; i < n_; ++i)
        if ((cls[c] >> i) & 1u) members.push_back(nc_.vars()[i]);
      w.merge.push_back(std::move(members));
    }
    w.sigma = sigma;
    w.topo.assign(order.rbegin(), order.rend());

    // Junk: one element per still-unseparated pair, reusing it for any others.
    auto separated = [&](std::size_t a, std::size_t b) {
      int ia = std::countr_zero(cls[a]);
      int ib = std::countr_zero(cls[b]);
      auto differs = [&](const Place& p) { return p[ia] != p[ib]; };
      return std::any_of(sigma.begin(), sigma.end(), differs) ||
             std::any_of(w.junk.begin(), w.junk.end(), [&](const JunkElement& j) { return differs(j.place); });
    };
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = a + 1; b < k; ++b)
        if (!separated(a, b)) w.junk.push_back(JunkElement{Place{*separator(cls[a], cls[b])}, 0});
    return w;
  }

  std::optional<std::uint64_t> separator(std::uint64_t a, std::uint64_t b) {
    const std::uint64_t ia = a & (~a + 1);
    const std::uint64_t ib = b & (~b + 1);
    if (auto p = sat(ia | ib, ia)) return p;
    return sat(ia | ib, ib);
  }

  const NormalizedConjunction& nc_;
  SolveOptions opt_;
  detail::PlaceSat sat_;
  std::size_t n_ = 0;
  std::vector<int> elems_;
  std::vector<std::pair<int, int>> member_pairs_;
  std::vector<int> rep_;
  std::map<std::pair<std::uint64_t, std::uint64_t>, std::optional<std::uint64_t>> memo_;
  std::uint64_t candidates_ = 0;
};

}  // namespace detail

/// Decides nc. Sat models are verified literal by literal before return.
inline SolveResult solve(const NormalizedConjunction& nc, const SolveOptions& opt = {}) {
  detail::MlsSolver s(nc, opt);
  return s.run();
}

/// Solves an arbitrary MLS formula disjunct by disjunct; the model is
/// restricted to the formula's own variables.
inline SolveResult solve_formula(const Formula& f, const SolveOptions& opt = {}) {
  SolveResult last;
  for (const auto& conj : dnf_split(f)) {
    auto nc = normalize(conj);
    auto r = solve(nc, opt);
    last.candidates += r.candidates;
    if (r.sat) {
      r.candidates = last.candidates;
      r.model = r.model.restricted_to(free_vars(f));
      if (!eval_formula(f, r.model)) throw InvariantViolation("solver model fails the input formula");
      return r;
    }
  }
  return last;
}

/// Normalized image of nc ∧ x ≠ y.
inline NormalizedConjunction with_disequality(const NormalizedConjunction& nc, const Variable& x,
                                              const Variable& y) {
  auto lits = nc.literals();
  lits.push_back(Literal{Atom::eq(Term::var(x), Term::var(y)), false});
  return normalize(lits);
}

/// The pairs (x, y) with nc ∧ x ≠ y unsatisfiable.
inline std::vector<std::pair<Variable, Variable>> implied_equalities(
    const NormalizedConjunction& nc, const std::vector<std::pair<Variable, Variable>>& pairs,
    const SolveOptions& opt = {}) {
  std::vector<std::pair<Variable, Variable>> out;
  for (const auto& [x, y] : pairs) {
    if (x == y || !solve(with_disequality(nc, x, y), opt).sat) out.emplace_back(x, y);
  }
  return out;
}

}  // namespace setsyl
