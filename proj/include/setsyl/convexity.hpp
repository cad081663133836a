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
/// The enlargement construction: given a model M of φ with Mx̄ = Mȳ and a
/// model M̄ of φ with M̄x̄ ≠ M̄ȳ, build a model of φ that keeps every
/// disequality of M and also separates x̄ from ȳ. Also: per-lemma checks on
/// the produced trace, the equality-minimization loop, and a bounded
/// convexity fuzzer.

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "setsyl/error.hpp"
#include "setsyl/formula.hpp"
#include "setsyl/hf_set.hpp"
#include "setsyl/hf_universe.hpp"
#include "setsyl/mls_solver.hpp"
#include "setsyl/normalizer.hpp"
#include "setsyl/oracle.hpp"

namespace setsyl {

using VarPair = std::pair<Variable, Variable>;

/// Adds `x ∈ _gN` for each variable of E absent from nc.
inline NormalizedConjunction pad_vars(const NormalizedConjunction& nc, const std::vector<VarPair>& E) {
  NormalizedConjunction out = nc;
  detail::FreshNames fresh;
  for (const auto& v : nc.vars()) fresh.reserve(v);
  for (const auto& [a, b] : E)
    for (const Variable* v : {&a, &b})
      if (!out.has_var(*v)) out.add_membership(*v, fresh.next());
  return out;
}

struct EnlargementTrace {
  HFSet s;
  HFSet t;
  /// The variable among x̄, ȳ whose value received 𝔰.
  Variable direction;
  /// V₀, V₁, ..., ending with the first empty set.
  std::vector<std::vector<Variable>> V;
  /// M₀, M₁, ...; one entry per element of V.
  std::vector<SetAssignment> Ms;
  std::size_t stabilized_at = 0;
};

struct EnlargeResult {
  SetAssignment model;
  EnlargementTrace trace;
};

namespace detail {

inline bool in_list(const std::vector<Variable>& vs, const Variable& v) {
  return std::find(vs.begin(), vs.end(), v) != vs.end();
}

}  // namespace detail

inline EnlargeResult enlarge(const NormalizedConjunction& nc, const SetAssignment& M_in,
                             const SetAssignment& Mbar_in, const Variable& xbar, const Variable& ybar) {
  const auto& vars = nc.vars();
  if (!nc.has_var(xbar) || !nc.has_var(ybar))
    throw PreconditionError("designated variables must occur in the conjunction (pad first)");
  for (const auto& v : vars) {
    if (!M_in.contains(v)) throw PreconditionError("M does not assign " + v.name);
    if (!Mbar_in.contains(v)) throw PreconditionError("M̄ does not assign " + v.name);
  }
  const SetAssignment M = M_in.restricted_to(vars);
  const SetAssignment Mbar = Mbar_in.restricted_to(vars);
  if (!satisfies(nc, M)) throw PreconditionError("M does not satisfy the conjunction");
  if (!(M.at(xbar) == M.at(ybar)))
    throw PreconditionError("M must satisfy " + xbar.name + " = " + ybar.name);
  if (!satisfies(nc, Mbar)) throw PreconditionError("M̄ does not satisfy the conjunction");
  if (Mbar.at(xbar) == Mbar.at(ybar))
    throw PreconditionError("M̄ must satisfy " + xbar.name + " != " + ybar.name);

  EnlargementTrace tr;
  tr.s = nested_singleton(M.rank() + 1);
  const HFSet& mx = Mbar.at(xbar);
  const HFSet& my = Mbar.at(ybar);
  auto dx = set_difference(mx, my);
  auto dy = set_difference(my, mx);
  // Canonical least element of the symmetric difference.
  if (dy.empty() || (!dx.empty() && dx.members().front() < dy.members().front())) {
    tr.t = dx.members().front();
    tr.direction = xbar;
  } else {
    tr.t = dy.members().front();
    tr.direction = ybar;
  }

  std::vector<Variable> V;
  for (const auto& u : vars)
    if (Mbar.at(u).contains(tr.t)) V.push_back(u);
  SetAssignment cur;
  for (const auto& u : vars)
    cur.set(u, detail::in_list(V, u) ? set_union(M.at(u), HFSet::singleton(tr.s)) : M.at(u));
  tr.V.push_back(V);
  tr.Ms.push_back(cur);

  const std::size_t cap = vars.size() + M.rank() + 2;
  while (!tr.V.back().empty()) {
    if (tr.V.size() > cap) throw InvariantViolation("membership phase failed to stabilize");
    const auto& prev_v = tr.V.back();
    const SetAssignment& prev = tr.Ms.back();
    std::vector<Variable> next_v;
    for (const auto& u : vars) {
      bool hit = std::any_of(prev_v.begin(), prev_v.end(),
                             [&](const Variable& w) { return M.at(u).contains(M.at(w)); });
      if (hit) next_v.push_back(u);
    }
    SetAssignment next;
    for (const auto& v : vars) {
      if (!detail::in_list(next_v, v)) {
        next.set(v, prev.at(v));
        continue;
      }
      std::vector<HFSet> add;
      for (const auto& u : prev_v)
        if (M.at(v).contains(M.at(u))) add.push_back(prev.at(u));
      next.set(v, set_union(prev.at(v), hf(std::move(add))));
    }
    tr.V.push_back(std::move(next_v));
    tr.Ms.push_back(std::move(next));
  }
  tr.stabilized_at = tr.Ms.size() - 1;
  for (std::size_t k = 0; k + 1 < tr.Ms.size(); ++k)
    if (tr.Ms[k] == tr.Ms[k + 1]) {
      tr.stabilized_at = k;
      break;
    }

  EnlargeResult out{tr.Ms.back(), std::move(tr)};
  if (!satisfies(nc, out.model)) throw InvariantViolation("enlarged model fails the conjunction");
  if (out.model.at(xbar) == out.model.at(ybar))
    throw InvariantViolation("enlarged model does not separate " + xbar.name + " and " + ybar.name);
  return out;
}

// ---------------------------------------------------------------------------
// Lemma checks

struct LemmaCheck {
  std::string lemma;  // L1a, L1b, L2, L3, L4, L5, L6
  std::size_t index = 0;
  bool pass = true;
  std::string detail;
};

struct LemmaReport {
  std::vector<LemmaCheck> checks;

  bool all_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const LemmaCheck& c) { return c.pass; });
  }
  std::vector<LemmaCheck> failures() const {
    std::vector<LemmaCheck> out;
    for (const auto& c : checks)
      if (!c.pass) out.push_back(c);
    return out;
  }
  bool passes(const std::string& lemma) const {
    return std::all_of(checks.begin(), checks.end(),
                       [&](const LemmaCheck& c) { return c.lemma != lemma || c.pass; });
  }
};

inline LemmaReport check_lemmas(const EnlargementTrace& tr, const SetAssignment& M,
                                const NormalizedConjunction& nc) {
  LemmaReport rep;
  const auto& vars = nc.vars();
  const std::size_t rs = tr.s.rank();
  const std::size_t rkM = M.restricted_to(vars).rank();
  const std::size_t steps = tr.Ms.size();
  auto add = [&](const char* lemma, std::size_t n, bool ok, std::string detail) {
    rep.checks.push_back(LemmaCheck{lemma, n, ok, ok ? std::string() : std::move(detail)});
  };
  auto in_v = [&](std::size_t n, const Variable& v) { return n < tr.V.size() && detail::in_list(tr.V[n], v); };

  for (std::size_t n = 0; n < steps; ++n) {
    const SetAssignment& Mn = tr.Ms[n];
    const SetAssignment& prev = n == 0 ? M : tr.Ms[n - 1];

    bool ok = true;
    std::string bad;
    for (const auto& v : vars)
      if (!prev.at(v).is_subset_of(Mn.at(v))) {
        ok = false;
        bad = v.name;
      }
    add("L1a", n, ok, "M_{n-1}" + bad + " not included in M_n" + bad);

    ok = true;
    for (const auto& v : vars) {
      std::vector<HFSet> bound(M.at(v).members().begin(), M.at(v).members().end());
      bound.push_back(tr.s);
      for (std::size_t k = 0; k < n; ++k)
        for (const auto& u : tr.V[k])
          if (M.at(v).contains(M.at(u))) bound.push_back(tr.Ms[k].at(u));
      if (!Mn.at(v).is_subset_of(hf(std::move(bound)))) {
        ok = false;
        bad = v.name;
      }
    }
    add("L1b", n, ok, "M_n" + bad + " exceeds its bound");

    const std::size_t l2 = std::min(vars.empty() ? 0 : vars.size() - 1, rkM);
    bool nonempty = n < tr.V.size() && !tr.V[n].empty();
    add("L2", n, !nonempty || n <= l2,
        "V_" + std::to_string(n) + " nonempty beyond bound " + std::to_string(l2));

    ok = true;
    for (const auto& v : vars) {
      std::size_t r = Mn.at(v).rank();
      bool good = in_v(n, v) ? r == rs + n + 1 : r <= rs + n;
      if (!good) {
        ok = false;
        bad = v.name + " has rank " + std::to_string(r);
      }
    }
    add("L3", n, ok, bad);

    ok = true;
    for (const auto& v : vars) {
      if (Mn.at(v) == tr.s || Mn.at(v).contains(tr.s) != tr.Ms[0].at(v).contains(tr.s)) {
        ok = false;
        bad = v.name;
      }
    }
    add("L4", n, ok, "s-membership of " + bad + " changed");

    ok = true;
    for (const auto& v : vars)
      for (const auto& q : Mn.at(v).members())
        if (q.rank() < rs && !M.at(v).contains(q)) {
          ok = false;
          bad = v.name;
        }
    add("L5", n, ok, "low-rank member of M_n" + bad + " missing from M" + bad);

    ok = true;
    if (n + 1 < steps) {
      for (const auto& m : nc.memberships()) {
        if (!in_v(n, m.x)) continue;
        if (!in_v(n + 1, m.y) || !tr.Ms[n + 1].at(m.y).contains(Mn.at(m.x))) {
          ok = false;
          bad = m.x.name + " in " + m.y.name;
        }
      }
    }
    add("L6", n, ok, "membership " + bad + " not propagated");
  }
  return rep;
}

/// Mu ≠ Mv implies M*u ≠ M*v for every pair of variables.
inline bool disequalities_preserved(const std::vector<Variable>& vars, const SetAssignment& M,
                                    const SetAssignment& Mstar) {
  for (std::size_t i = 0; i < vars.size(); ++i)
    for (std::size_t j = i + 1; j < vars.size(); ++j)
      if (!(M.at(vars[i]) == M.at(vars[j])) && Mstar.at(vars[i]) == Mstar.at(vars[j])) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Equality minimization

struct EqualityStatus {
  VarPair pair;
  bool implied = false;
};

struct EqualitySet {
  std::vector<EqualityStatus> equalities;

  std::vector<VarPair> implied() const {
    std::vector<VarPair> out;
    for (const auto& e : equalities)
      if (e.implied) out.push_back(e.pair);
    return out;
  }
};

struct MinimizeResult {
  bool sat = false;
  /// The fixpoint model; a simultaneous countermodel for every falsifiable pair.
  SetAssignment model;
  EqualitySet classification;
  std::size_t enlargements = 0;
  /// |E⁺| before each iteration and at the fixpoint.
  std::vector<std::size_t> satisfied_counts;
};

inline MinimizeResult minimize_equalities(const NormalizedConjunction& nc_in, const std::vector<VarPair>& E,
                                          const SolveOptions& opt = {}) {
  if (E.empty()) throw PreconditionError("minimize_equalities needs a nonempty E");
  const NormalizedConjunction nc = pad_vars(nc_in, E);
  MinimizeResult out;
  auto first = solve(nc, opt);
  if (!first.sat) return out;
  out.sat = true;
  SetAssignment M = first.model;

  std::map<std::size_t, std::optional<SetAssignment>> probe;  // pair index -> M̄ or unsat
  auto probe_pair = [&](std::size_t i) -> const std::optional<SetAssignment>& {
    auto it = probe.find(i);
    if (it != probe.end()) return it->second;
    auto r = solve(with_disequality(nc, E[i].first, E[i].second), opt);
    std::optional<SetAssignment> v;
    if (r.sat) v = r.model.restricted_to(nc.vars());
    return probe.emplace(i, std::move(v)).first->second;
  };
  auto satisfied = [&](const SetAssignment& m) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < E.size(); ++i)
      if (m.at(E[i].first) == m.at(E[i].second)) idx.push_back(i);
    return idx;
  };

  while (true) {
    auto plus = satisfied(M);
    out.satisfied_counts.push_back(plus.size());
    std::optional<std::size_t> designated;
    for (std::size_t i : plus)
      if (!(E[i].first == E[i].second) && probe_pair(i)) {
        designated = i;
        break;
      }
    if (!designated) break;
    const auto& [x, y] = E[*designated];
    auto r = enlarge(nc, M, *probe_pair(*designated), x, y);
    ++out.enlargements;
    if (satisfied(r.model).size() >= plus.size())
      throw InvariantViolation("enlargement did not shrink the satisfied equalities");
    M = std::move(r.model);
    if (out.enlargements > E.size()) throw InvariantViolation("minimization exceeded |E| iterations");
  }
  out.model = M;
  auto plus = satisfied(M);
  for (std::size_t i = 0; i < E.size(); ++i)
    out.classification.equalities.push_back(
        EqualityStatus{E[i], std::find(plus.begin(), plus.end(), i) != plus.end()});
  return out;
}

// ---------------------------------------------------------------------------
// Fuzzer

struct FuzzConfig {
  std::size_t vars = 3;
  std::size_t lits = 3;
  std::size_t iters = 1000;
  std::uint64_t seed = 0;
  std::size_t rank_bound = 3;
  /// Where to write reproducers; empty disables dumping.
  std::filesystem::path dump_dir;
};

struct FuzzReport {
  std::size_t iterations = 0;
  std::size_t skipped = 0;          // fewer than two variables
  std::size_t disjunction_implied = 0;
  std::size_t single_implied = 0;
  std::size_t violations = 0;
  std::vector<std::string> reproducers;

  friend bool operator==(const FuzzReport&, const FuzzReport&) = default;
};

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

/// Random normalized conjunction over v0..v{vars-1} with 1..lits literals.
template <typename Rng>
NormalizedConjunction random_conjunction(Rng& rng, std::size_t vars, std::size_t lits) {
  std::uniform_int_distribution<std::size_t> pick_var(0, vars - 1);
  std::uniform_int_distribution<std::size_t> pick_len(1, lits);
  std::bernoulli_distribution coin(0.5);
  auto var = [&] { return Variable("v" + std::to_string(pick_var(rng))); };
  NormalizedConjunction nc;
  const std::size_t n = pick_len(rng);
  for (std::size_t i = 0; i < n; ++i) {
    if (coin(rng)) {
      Variable x = var();
      nc.add_membership(x, var());
    } else {
      Variable x = var();
      Variable y = var();
      nc.add_difference(x, y, var());
    }
  }
  return nc;
}

inline std::vector<VarPair> all_pairs(const std::vector<Variable>& vars) {
  std::vector<VarPair> out;
  for (std::size_t i = 0; i < vars.size(); ++i)
    for (std::size_t j = i + 1; j < vars.size(); ++j) out.emplace_back(vars[i], vars[j]);
  return out;
}

inline Formula equality(const Variable& a, const Variable& b) {
  return Formula::atom(Atom::eq(Term::var(a), Term::var(b)));
}

/// Whenever the oracle finds nc ⟹ ⋁E within the bound, some single
/// equality of E must also be implied within the bound.
inline FuzzReport convexity_fuzz(const FuzzConfig& cfg) {
  if (cfg.vars == 0 || cfg.vars > 4) throw PreconditionError("convexity_fuzz needs 1..4 variables");
  if (cfg.lits == 0) throw PreconditionError("convexity_fuzz needs at least one literal");
  if (cfg.rank_bound > 3) throw PreconditionError("convexity_fuzz rank bound must be <= 3");
  FuzzReport rep;
  for (std::size_t it = 0; it < cfg.iters; ++it) {
    ++rep.iterations;
    std::mt19937_64 rng(splitmix64(cfg.seed ^ splitmix64(it)));
    auto nc = random_conjunction(rng, cfg.vars, cfg.lits);
    auto E = all_pairs(nc.vars());
    if (E.empty()) {
      ++rep.skipped;
      continue;
    }
    const Formula phi = nc.to_formula();
    std::vector<Formula> eqs;
    for (const auto& [a, b] : E) eqs.push_back(equality(a, b));
    if (!oracle_implies(phi, Formula::disjunction(eqs), cfg.rank_bound).implied) continue;
    ++rep.disjunction_implied;
    bool single = std::any_of(eqs.begin(), eqs.end(), [&](const Formula& e) {
      return oracle_implies(phi, e, cfg.rank_bound).implied;
    });
    if (single) {
      ++rep.single_implied;
      continue;
    }
    ++rep.violations;
    std::string text = "; convexity violation, seed " + std::to_string(cfg.seed) + " iteration " +
                       std::to_string(it) + "\n" + nc.print();
    rep.reproducers.push_back(text);
    if (!cfg.dump_dir.empty()) {
      std::filesystem::create_directories(cfg.dump_dir);
      std::ofstream f(cfg.dump_dir / ("violation_" + std::to_string(cfg.seed) + "_" + std::to_string(it) + ".syl"));
      f << text;
    }
  }
  return rep;
}

}  // namespace setsyl
