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
/// Linear rational arithmetic: exact Fourier–Motzkin elimination with strict
/// and non-strict bounds, disequalities, implied equalities and sample points.

#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "setsyl/error.hpp"
#include "setsyl/formula.hpp"

namespace setsyl {

/// Σ coeffs[v]·v + constant, zero coefficients dropped.
struct LinearExpr {
  std::map<std::string, Rational> coeffs;
  Rational constant = 0;

  void add(const std::string& v, const Rational& c) {
    auto& slot = coeffs[v];
    slot += c;
    if (slot == 0) coeffs.erase(v);
  }
  LinearExpr& operator+=(const LinearExpr& o) {
    for (const auto& [v, c] : o.coeffs) add(v, c);
    constant += o.constant;
    return *this;
  }
  LinearExpr scaled(const Rational& k) const {
    LinearExpr out;
    if (k == 0) return out;
    for (const auto& [v, c] : coeffs) out.coeffs.emplace(v, c * k);
    out.constant = constant * k;
    return out;
  }
  Rational coeff(const std::string& v) const {
    auto it = coeffs.find(v);
    return it == coeffs.end() ? Rational(0) : it->second;
  }
  bool ground() const { return coeffs.empty(); }

  Rational eval(const std::map<std::string, Rational>& point) const {
    Rational r = constant;
    for (const auto& [v, c] : coeffs) {
      auto it = point.find(v);
      if (it != point.end()) r += c * it->second;
    }
    return r;
  }
  friend bool operator==(const LinearExpr&, const LinearExpr&) = default;
};

enum class Rel { Le, Lt, Eq };

/// expr REL 0
struct LinearConstraint {
  LinearExpr expr;
  Rel rel = Rel::Le;
};

inline LinearExpr linearize(const Term& t) {
  LinearExpr e;
  switch (t.op()) {
    case Op::Var: e.add(t.variable().name, 1); return e;
    case Op::Const: e.constant = t.value(); return e;
    case Op::Plus:
      e = linearize(t.arg(0));
      e += linearize(t.arg(1));
      return e;
    case Op::Neg: return linearize(t.arg(0)).scaled(-1);
    default: break;
  }
  throw NonlinearTermError("term " + print_term(t) + " is not linear arithmetic");
}

/// Constraints of one LRA problem: inequalities/equalities plus disequalities.
struct LraState {
  std::vector<LinearConstraint> constraints;
  std::vector<LinearExpr> disequalities;  // expr ≠ 0

  void assert_literal(const Literal& l) {
    const Atom& a = l.atom;
    if (a.pred != Pred::Leq && a.pred != Pred::Eq)
      throw NonlinearTermError("atom " + print_atom(a) + " is not an arithmetic relation");
    LinearExpr d = linearize(a.lhs());
    d += linearize(a.rhs()).scaled(-1);
    if (a.pred == Pred::Eq) {
      if (l.positive) {
        constraints.push_back({d, Rel::Eq});
      } else {
        disequalities.push_back(d);
      }
    } else if (l.positive) {
      constraints.push_back({d, Rel::Le});  // lhs - rhs <= 0
    } else {
      constraints.push_back({d.scaled(-1), Rel::Lt});  // rhs - lhs < 0
    }
  }

  std::vector<std::string> vars() const {
    std::vector<std::string> out;
    auto note = [&](const LinearExpr& e) {
      for (const auto& [v, c] : e.coeffs)
        if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
    };
    for (const auto& c : constraints) note(c.expr);
    for (const auto& d : disequalities) note(d);
    return out;
  }
};

namespace detail {

/// Fourier–Motzkin feasibility with back-substituted sample point.
class FourierMotzkin {
 public:
  /// nullopt when infeasible.
  static std::optional<std::map<std::string, Rational>> solve(std::vector<LinearConstraint> cs) {
    // Equalities by substitution.
    std::vector<std::pair<std::string, LinearExpr>> solved;  // v = expr
    std::vector<LinearConstraint> ineqs;
    std::vector<LinearConstraint> eqs;
    for (auto& c : cs) (c.rel == Rel::Eq ? eqs : ineqs).push_back(std::move(c));
    while (!eqs.empty()) {
      LinearConstraint e = std::move(eqs.back());
      eqs.pop_back();
      if (e.expr.ground()) {
        if (e.expr.constant != 0) return std::nullopt;
        continue;
      }
      auto [v, c] = *e.expr.coeffs.begin();
      // v = -(expr - c·v) / c
      LinearExpr rest = e.expr;
      rest.coeffs.erase(v);
      LinearExpr def = rest.scaled(Rational(-1) / c);
      auto subst = [&](LinearExpr& x) {
        Rational k = x.coeff(v);
        if (k == 0) return;
        x.coeffs.erase(v);
        x += def.scaled(k);
      };
      for (auto& x : eqs) subst(x.expr);
      for (auto& x : ineqs) subst(x.expr);
      for (auto& s : solved) subst(s.second);
      solved.emplace_back(v, def);
    }

    // Elimination order: variables by first appearance.
    std::vector<std::string> order;
    for (const auto& c : ineqs)
      for (const auto& [v, k] : c.expr.coeffs)
        if (std::find(order.begin(), order.end(), v) == order.end()) order.push_back(v);

    std::vector<std::vector<LinearConstraint>> levels;  // constraints mentioning order[i]
    std::vector<LinearConstraint> cur = std::move(ineqs);
    for (const auto& v : order) {
      std::vector<LinearConstraint> lower, upper, keep;
      for (auto& c : cur) {
        Rational k = c.expr.coeff(v);
        if (k == 0) {
          keep.push_back(std::move(c));
        } else {
          (k > 0 ? upper : lower).push_back(std::move(c));
        }
      }
      for (const auto& u : upper)
        for (const auto& l : lower) {
          // u: a·v + U ⋈ 0 (a > 0), l: b·v + L ⋈ 0 (b < 0)
          Rational a = u.expr.coeff(v);
          Rational b = -l.expr.coeff(v);
          LinearExpr comb = u.expr.scaled(b);
          comb += l.expr.scaled(a);
          comb.coeffs.erase(v);
          Rel r = (u.rel == Rel::Lt || l.rel == Rel::Lt) ? Rel::Lt : Rel::Le;
          if (comb.ground()) {
            if (comb.constant > 0 || (r == Rel::Lt && comb.constant == 0)) return std::nullopt;
            continue;
          }
          keep.push_back({comb, r});
        }
      std::vector<LinearConstraint> here = std::move(upper);
      here.insert(here.end(), lower.begin(), lower.end());
      levels.push_back(std::move(here));
      cur = std::move(keep);
    }
    for (const auto& c : cur) {
      if (c.expr.constant > 0 || (c.rel == Rel::Lt && c.expr.constant == 0)) return std::nullopt;
    }

    std::map<std::string, Rational> point;
    for (std::size_t i = order.size(); i-- > 0;) {
      const auto& v = order[i];
      std::optional<Rational> lo, hi;
      bool lo_strict = false, hi_strict = false;
      for (const auto& c : levels[i]) {
        Rational k = c.expr.coeff(v);
        LinearExpr rest = c.expr;
        rest.coeffs.erase(v);
        Rational bound = -rest.eval(point) / k;  // v ⋈ bound
        bool strict = c.rel == Rel::Lt;
        if (k > 0) {
          if (!hi || bound < *hi || (bound == *hi && strict)) {
            hi = bound;
            hi_strict = strict;
          }
        } else if (!lo || bound > *lo || (bound == *lo && strict)) {
          lo = bound;
          lo_strict = strict;
        }
      }
      Rational val = 0;
      if (lo && hi) {
        val = (*lo == *hi) ? *lo : (*lo + *hi) / 2;
      } else if (lo) {
        val = lo_strict ? *lo + 1 : *lo;
      } else if (hi) {
        val = hi_strict ? *hi - 1 : *hi;
      }
      point[v] = val;
    }
    for (std::size_t i = solved.size(); i-- > 0;) point[solved[i].first] = solved[i].second.eval(point);
    return point;
  }
};

}  // namespace detail

struct LraResult {
  bool sat = false;
  std::map<std::string, Rational> point;
};

/// Feasibility of the constraints together with every disequality. A
/// disequality d ≠ 0 is realized by whichever strict side stays feasible;
/// over a convex region this choice never blocks a later disequality.
inline LraResult lra_check(const LraState& state) {
  std::vector<LinearConstraint> cs = state.constraints;
  if (!detail::FourierMotzkin::solve(cs)) return {};
  for (const auto& d : state.disequalities) {
    auto below = cs;
    below.push_back({d, Rel::Lt});
    if (detail::FourierMotzkin::solve(below)) {
      cs = std::move(below);
      continue;
    }
    auto above = cs;
    above.push_back({d.scaled(-1), Rel::Lt});
    if (!detail::FourierMotzkin::solve(above)) return {};
    cs = std::move(above);
  }
  LraResult out;
  out.sat = true;
  out.point = *detail::FourierMotzkin::solve(cs);
  for (const auto& v : state.vars())
    if (!out.point.count(v)) out.point[v] = 0;
  return out;
}

/// Pairs among `shared` forced equal: both x − y > 0 and y − x > 0 are infeasible.
inline std::vector<std::pair<Variable, Variable>> lra_implied(const LraState& state,
                                                              const std::vector<Variable>& shared) {
  std::vector<std::pair<Variable, Variable>> out;
  const auto present = state.vars();
  auto has = [&](const Variable& v) { return std::find(present.begin(), present.end(), v.name) != present.end(); };
  for (std::size_t i = 0; i < shared.size(); ++i)
    for (std::size_t j = i + 1; j < shared.size(); ++j) {
      const auto& x = shared[i];
      const auto& y = shared[j];
      if (!has(x) || !has(y)) continue;
      LinearExpr diff;
      diff.add(x.name, 1);
      diff.add(y.name, -1);
      bool implied = true;
      for (const auto& side : {diff, diff.scaled(-1)}) {
        LraState probe = state;
        probe.constraints.push_back({side.scaled(-1), Rel::Lt});  // side > 0
        if (lra_check(probe).sat) implied = false;
      }
      if (implied) out.emplace_back(x, y);
    }
  return out;
}

}  // namespace setsyl
