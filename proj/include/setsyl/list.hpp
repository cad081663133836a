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
/// List structure: congruence closure over cons/car/cdr with the projection
/// axioms, construction for non-atoms, and atom/cons clash detection.

#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "setsyl/error.hpp"
#include "setsyl/formula.hpp"

namespace setsyl {

class ListState {
 public:
  /// Adds a LIST literal: equalities, disequalities and (¬)atom over list terms.
  void assert_literal(const Literal& l) {
    const Atom& a = l.atom;
    if (a.pred == Pred::IsAtom) {
      int t = intern(a.args.at(0));
      (l.positive ? atoms_ : non_atoms_).push_back(t);
      return;
    }
    if (a.pred != Pred::Eq)
      throw UnsupportedAtomError("atom " + print_atom(a) + " is not a list literal");
    int x = intern(a.lhs());
    int y = intern(a.rhs());
    if (l.positive) {
      eqs_.emplace_back(x, y);
    } else {
      diseqs_.emplace_back(x, y);
    }
  }

  /// Runs the closure; false when a disequality or an atom mark is violated.
  bool check() {
    if (!non_atoms_materialized_) {
      for (int t : non_atoms_) {
        // ¬atom(x)  ->  cons(car(x), cdr(x)) = x
        int car = node(Op::Car, {t});
        int cdr = node(Op::Cdr, {t});
        eqs_.emplace_back(node(Op::Cons, {car, cdr}), t);
      }
      non_atoms_materialized_ = true;
    }
    for (auto [x, y] : eqs_) unite(x, y);
    close();
    for (auto [x, y] : diseqs_)
      if (find(x) == find(y)) return false;
    for (int t : atoms_) {
      int c = find(t);
      for (std::size_t i = 0; i < nodes_.size(); ++i)
        if (nodes_[i].op == Op::Cons && find(static_cast<int>(i)) == c) return false;
      for (int n : non_atoms_)
        if (find(n) == c) return false;
    }
    return true;
  }

  bool same_class(const Variable& a, const Variable& b) {
    auto ia = vars_.find(a.name), ib = vars_.find(b.name);
    if (ia == vars_.end() || ib == vars_.end()) return false;
    return find(ia->second) == find(ib->second);
  }

  bool has(const Variable& v) const { return vars_.count(v.name) != 0; }

  /// Representative variable name per variable (first variable of its class).
  std::map<std::string, std::string> representatives() {
    std::map<int, std::string> first;
    std::vector<std::pair<std::string, int>> vs(vars_.begin(), vars_.end());
    std::sort(vs.begin(), vs.end(), [](const auto& a, const auto& b) { return a.second < b.second; });
    std::map<std::string, std::string> out;
    for (const auto& [name, id] : vs) {
      auto [it, fresh] = first.emplace(find(id), name);
      out[name] = it->second;
    }
    return out;
  }

 private:
  struct Node {
    Op op;
    std::vector<int> args;
  };

  int node(Op op, std::vector<int> args, const std::string& name = {}) {
    auto key = std::make_tuple(op, args, name);
    auto it = table_.find(key);
    if (it != table_.end()) return it->second;
    int id = static_cast<int>(nodes_.size());
    nodes_.push_back(Node{op, std::move(args)});
    parent_.push_back(id);
    table_.emplace(std::move(key), id);
    return id;
  }

  int intern(const Term& t) {
    if (t.is_var()) {
      int id = node(Op::Var, {}, t.variable().name);
      vars_.emplace(t.variable().name, id);
      return id;
    }
    if (!is_list_op(t.op()))
      throw UnsupportedAtomError("term " + print_term(t) + " is not a list term");
    std::vector<int> args;
    for (const auto& a : t.args()) args.push_back(intern(a));
    return node(t.op(), std::move(args));
  }

  int find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[std::max(a, b)] = std::min(a, b);
    return true;
  }

  // Congruence plus car/cdr projection, to fixpoint.
  void close() {
    bool changed = true;
    while (changed) {
      changed = false;
      const std::size_t n = nodes_.size();
      for (std::size_t i = 0; i < n; ++i) {
        const Node& a = nodes_[i];
        if (a.op == Op::Var) continue;
        for (std::size_t j = i + 1; j < n; ++j) {
          const Node& b = nodes_[j];
          if (b.op != a.op || b.args.size() != a.args.size()) continue;
          bool cong = true;
          for (std::size_t k = 0; k < a.args.size(); ++k)
            if (find(a.args[k]) != find(b.args[k])) cong = false;
          if (cong && unite(static_cast<int>(i), static_cast<int>(j))) changed = true;
        }
      }
      for (std::size_t i = 0; i < n; ++i) {
        if (nodes_[i].op != Op::Car && nodes_[i].op != Op::Cdr) continue;
        int arg = find(nodes_[i].args[0]);
        for (std::size_t j = 0; j < n; ++j) {
          if (nodes_[j].op != Op::Cons || find(static_cast<int>(j)) != arg) continue;
          int proj = nodes_[j].args[nodes_[i].op == Op::Car ? 0 : 1];
          if (unite(static_cast<int>(i), proj)) changed = true;
        }
      }
    }
  }

  std::vector<Node> nodes_;
  std::vector<int> parent_;
  std::map<std::tuple<Op, std::vector<int>, std::string>, int> table_;
  std::map<std::string, int> vars_;
  std::vector<std::pair<int, int>> eqs_;
  std::vector<std::pair<int, int>> diseqs_;
  std::vector<int> atoms_;
  std::vector<int> non_atoms_;
  bool non_atoms_materialized_ = false;
};

struct ListResult {
  bool sat = false;
  std::map<std::string, std::string> representatives;
};

inline ListResult list_check(ListState& state) {
  ListResult out;
  out.sat = state.check();
  if (out.sat) out.representatives = state.representatives();
  return out;
}

/// Pairs of `shared` in the same congruence class after closure.
inline std::vector<std::pair<Variable, Variable>> list_implied(ListState& state,
                                                               const std::vector<Variable>& shared) {
  std::vector<std::pair<Variable, Variable>> out;
  for (std::size_t i = 0; i < shared.size(); ++i)
    for (std::size_t j = i + 1; j < shared.size(); ++j)
      if (state.same_class(shared[i], shared[j])) out.emplace_back(shared[i], shared[j]);
  return out;
}

}  // namespace setsyl
