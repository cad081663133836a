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
/// Nelson–Oppen combination of convex theories: purification, partitioning,
/// and equality propagation to a fixpoint, with MLS, LRA and list plugins.

#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "setsyl/error.hpp"
#include "setsyl/formula.hpp"
#include "setsyl/hf_universe.hpp"
#include "setsyl/list.hpp"
#include "setsyl/lra.hpp"
#include "setsyl/mls_solver.hpp"
#include "setsyl/normalizer.hpp"

namespace setsyl {

using VarPair = std::pair<Variable, Variable>;

/// Signature an operator belongs to; set extensions count as MLS.
inline Theory op_theory(Op op) {
  if (op == Op::Var) return Theory::SHARED;
  if (is_arith_op(op)) return Theory::LRA;
  if (is_list_op(op)) return Theory::LIST;
  return Theory::MLS;
}

struct TheoryProblem {
  LiteralConjunction mls;
  LiteralConjunction lra;
  LiteralConjunction list;
  std::vector<Variable> shared;
  LiteralConjunction fresh_defs;

  LiteralConjunction& partition(Theory t) {
    switch (t) {
      case Theory::LRA: return lra;
      case Theory::LIST: return list;
      default: return mls;
    }
  }
  const LiteralConjunction& partition(Theory t) const {
    return const_cast<TheoryProblem*>(this)->partition(t);
  }
};

/// Literal conjunctions of a formula's DNF, any signature.
inline std::vector<LiteralConjunction> dnf_literals(const Formula& f) { return detail::dnf(f, true, false); }

namespace detail {

class Purifier {
 public:
  explicit Purifier(const LiteralConjunction& lits) : fresh_(kPurifyPrefix) {
    VarList vs;
    for (const auto& l : lits) collect_vars(l.atom, vs);
    for (const auto& v : vs) fresh_.reserve(v);
  }

  TheoryProblem run(const LiteralConjunction& lits) {
    LiteralConjunction pending_shared;
    for (const auto& l : lits) {
      Theory home = home_theory(l.atom);
      if (home == Theory::SHARED) {
        pending_shared.push_back(l);
        continue;
      }
      std::vector<Term> args;
      for (const auto& t : l.atom.args) args.push_back(top(t, home));
      route(home, Literal{Atom::make(l.atom.pred, std::move(args)), l.positive});
    }
    for (const auto& l : pending_shared) {
      const Variable& x = l.atom.lhs().variable();
      const Variable& y = l.atom.rhs().variable();
      std::vector<Theory> both, either;
      for (Theory t : {Theory::MLS, Theory::LRA, Theory::LIST}) {
        bool hx = mentions(t, x), hy = mentions(t, y);
        if (hx && hy) both.push_back(t);
        if (hx || hy) either.push_back(t);
      }
      const auto& targets = !both.empty() ? both : either;
      if (targets.empty()) {
        route(Theory::MLS, l);
      } else {
        for (Theory t : targets) route(t, l);
      }
    }
    for (const auto& [name, ths] : where_)
      if (ths.size() >= 2) out_.shared.push_back(Variable(name));
    std::sort(out_.shared.begin(), out_.shared.end());
    return std::move(out_);
  }

 private:
  static Theory home_theory(const Atom& a) {
    switch (a.pred) {
      case Pred::In:
      case Pred::Subset: return Theory::MLS;
      case Pred::Leq: return Theory::LRA;
      case Pred::IsAtom: return Theory::LIST;
      case Pred::Eq: break;
    }
    if (!a.lhs().is_var()) return op_theory(a.lhs().op());
    if (!a.rhs().is_var()) return op_theory(a.rhs().op());
    return Theory::SHARED;
  }

  bool mentions(Theory t, const Variable& v) const {
    auto it = where_.find(v.name);
    return it != where_.end() && it->second.count(t) != 0;
  }

  void route(Theory t, const Literal& l) {
    out_.partition(t).push_back(l);
    VarList vs;
    collect_vars(l.atom, vs);
    for (const auto& v : vs) where_[v.name].insert(t);
  }

  // A term sitting directly under a predicate of theory `home`.
  Term top(const Term& t, Theory home) {
    if (t.is_var()) return t;
    if (op_theory(t.op()) != home) return name(t);
    return rebuild(t, home);
  }

  // Arguments of an operator of theory `home`.
  Term inner(const Term& t, Theory home) {
    if (t.is_var()) return t;
    if (op_theory(t.op()) != home) return name(t);
    // Nested list applications get their own names.
    if (home == Theory::LIST) return name(t);
    return rebuild(t, home);
  }

  Term rebuild(const Term& t, Theory home) {
    if (t.args().empty()) return t;
    std::vector<Term> args;
    for (const auto& a : t.args()) args.push_back(inner(a, home));
    return Term::apply(t.op(), std::move(args));
  }

  // Fresh variable p with p = t routed to t's own theory.
  Term name(const Term& t) {
    Variable p = fresh_.next();
    Theory th = op_theory(t.op());
    Literal def{Atom::eq(Term::var(p), rebuild(t, th)), true};
    out_.fresh_defs.push_back(def);
    route(th, def);
    return Term::var(p);
  }

  FreshNames fresh_;
  TheoryProblem out_;
  std::map<std::string, std::set<Theory>> where_;
};

}  // namespace detail

/// Replaces alien subterms by fresh `_p` variables, bottom-up, and splits the
/// literals by signature. Bare variable (dis)equalities go to the partitions
/// mentioning both sides, else either side, else MLS.
inline TheoryProblem purify(const LiteralConjunction& conj) {
  detail::Purifier p(conj);
  return p.run(conj);
}

// ---------------------------------------------------------------------------
// Plugins

class TheoryPlugin {
 public:
  virtual ~TheoryPlugin() = default;
  virtual std::string name() const = 0;
  virtual Theory theory() const = 0;
  virtual bool is_convex() const { return true; }
  /// Replaces the plugin's literal set; true when satisfiable.
  virtual bool assert_literals(const LiteralConjunction& lits) = 0;
  /// Pairs of `shared` entailed equal by the current literals.
  virtual std::vector<VarPair> implied_equalities(const std::vector<Variable>& shared) = 0;
};

/// MLS is stably infinite: pad any model with fresh high-rank elements.
class MlsPlugin : public TheoryPlugin {
 public:
  explicit MlsPlugin(SolveOptions opt = {}) : opt_(opt) {}
  std::string name() const override { return "mls"; }
  Theory theory() const override { return Theory::MLS; }

  bool assert_literals(const LiteralConjunction& lits) override {
    VarList vs;
    for (const auto& l : lits) collect_vars(l.atom, vs);
    vars_ = vs.items();
    nc_ = normalize(lits);
    auto r = solve(nc_, opt_);
    model_ = r.sat ? r.model.restricted_to(vars_) : SetAssignment();
    return r.sat;
  }

  std::vector<VarPair> implied_equalities(const std::vector<Variable>& shared) override {
    std::vector<VarPair> pairs;
    for (std::size_t i = 0; i < shared.size(); ++i)
      for (std::size_t j = i + 1; j < shared.size(); ++j)
        if (nc_.has_var(shared[i]) && nc_.has_var(shared[j])) pairs.emplace_back(shared[i], shared[j]);
    return setsyl::implied_equalities(nc_, pairs, opt_);
  }

  const SetAssignment& model() const { return model_; }

 private:
  SolveOptions opt_;
  NormalizedConjunction nc_;
  std::vector<Variable> vars_;
  SetAssignment model_;
};

/// Rational arithmetic is stably infinite: any nonempty solution set of a
/// satisfiable conjunction over ℚ is infinite or extends to one.
class LraPlugin : public TheoryPlugin {
 public:
  std::string name() const override { return "lra"; }
  Theory theory() const override { return Theory::LRA; }

  bool assert_literals(const LiteralConjunction& lits) override {
    state_ = LraState{};
    for (const auto& l : lits) state_.assert_literal(l);
    auto r = lra_check(state_);
    point_ = r.point;
    return r.sat;
  }

  std::vector<VarPair> implied_equalities(const std::vector<Variable>& shared) override {
    return lra_implied(state_, shared);
  }

  const std::map<std::string, Rational>& point() const { return point_; }

 private:
  LraState state_;
  std::map<std::string, Rational> point_;
};

/// Lists without an acyclicity axiom admit infinitely many atoms.
class ListPlugin : public TheoryPlugin {
 public:
  std::string name() const override { return "list"; }
  Theory theory() const override { return Theory::LIST; }

  bool assert_literals(const LiteralConjunction& lits) override {
    state_ = ListState{};
    for (const auto& l : lits) state_.assert_literal(l);
    auto r = list_check(state_);
    classes_ = r.representatives;
    return r.sat;
  }

  std::vector<VarPair> implied_equalities(const std::vector<Variable>& shared) override {
    return list_implied(state_, shared);
  }

  const std::map<std::string, std::string>& classes() const { return classes_; }

 private:
  ListState state_;
  std::map<std::string, std::string> classes_;
};

// ---------------------------------------------------------------------------
// Propagation

struct PropagateResult {
  bool sat = false;
  /// Name of the plugin that reported unsatisfiability.
  std::string culprit;
  std::vector<VarPair> propagated;
  /// Rounds that exchanged at least one new equality.
  std::size_t rounds = 0;
};

inline PropagateResult propagate(const TheoryProblem& problem, const std::vector<TheoryPlugin*>& plugins) {
  for (auto* p : plugins)
    if (!p->is_convex())
      throw NonConvexPluginError("plugin " + p->name() + " is not convex; case splitting is unsupported");
  for (Theory t : {Theory::MLS, Theory::LRA, Theory::LIST}) {
    if (problem.partition(t).empty()) continue;
    bool served = std::any_of(plugins.begin(), plugins.end(), [&](TheoryPlugin* p) { return p->theory() == t; });
    if (!served)
      throw UnsupportedAtomError("no plugin enabled for " + std::string(theory_name(t)) + " literals");
  }

  const auto& shared = problem.shared;
  std::map<std::string, std::string> parent;
  for (const auto& v : shared) parent[v.name] = v.name;
  auto find = [&](std::string x) {
    while (parent[x] != x) x = parent[x];
    return x;
  };

  PropagateResult out;
  LiteralConjunction eqs;
  while (true) {
    for (auto* p : plugins) {
      LiteralConjunction lits = problem.partition(p->theory());
      lits.insert(lits.end(), eqs.begin(), eqs.end());
      if (!p->assert_literals(lits)) {
        out.culprit = p->name();
        return out;
      }
    }
    bool fresh = false;
    for (auto* p : plugins) {
      for (const auto& [x, y] : p->implied_equalities(shared)) {
        auto rx = find(x.name), ry = find(y.name);
        if (rx == ry) continue;
        parent[std::max(rx, ry)] = std::min(rx, ry);
        out.propagated.emplace_back(x, y);
        eqs.push_back(Literal{Atom::eq(Term::var(x), Term::var(y)), true});
        fresh = true;
      }
    }
    if (!fresh) break;
    ++out.rounds;
  }
  out.sat = true;
  return out;
}

// ---------------------------------------------------------------------------

struct CombinedResult {
  bool sat = false;
  std::string culprit;
  std::vector<VarPair> propagated;
  std::size_t rounds = 0;
  TheoryProblem problem;
  SetAssignment mls_model;
  std::map<std::string, Rational> lra_point;
  std::map<std::string, std::string> list_classes;
};

struct CombineOptions {
  /// Plugins in polling order; any of "mls", "lra", "list".
  std::vector<std::string> plugins{"mls", "lra", "list"};
  SolveOptions solver;
};

/// Solves a single literal conjunction by purification and propagation.
inline CombinedResult solve_conjunction(const LiteralConjunction& lits, const CombineOptions& opt = {}) {
  CombinedResult out;
  out.problem = purify(lits);
  MlsPlugin mls(opt.solver);
  LraPlugin lra;
  ListPlugin list;
  std::vector<TheoryPlugin*> order;
  for (const auto& name : opt.plugins) {
    if (name == "mls") {
      order.push_back(&mls);
    } else if (name == "lra") {
      order.push_back(&lra);
    } else if (name == "list") {
      order.push_back(&list);
    } else {
      throw PreconditionError("unknown plugin " + name);
    }
  }
  auto r = propagate(out.problem, order);
  out.sat = r.sat;
  out.culprit = r.culprit;
  out.propagated = r.propagated;
  out.rounds = r.rounds;
  if (out.sat) {
    out.mls_model = mls.model();
    out.lra_point = lra.point();
    out.list_classes = list.classes();
  }
  return out;
}

/// The script's conjunction, split into DNF disjuncts; Sat on the first
/// satisfiable disjunct.
inline CombinedResult solve_combined(const Script& script, const CombineOptions& opt = {}) {
  CombinedResult last;
  for (const auto& conj : dnf_literals(script.conjunction())) {
    last = solve_conjunction(conj, opt);
    if (last.sat) return last;
  }
  return last;
}

}  // namespace setsyl
