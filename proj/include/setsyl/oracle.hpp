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
/// Bounded-rank satisfiability and implication oracle.
///
/// Values are Ackermann codes (rank <= 4 fits in 16 bits). The search assigns
/// one variable at a time, picks the variable with the fewest candidates,
/// derives candidates from equalities, memberships and bitwise Boolean
/// constraints, and splits independent components.

#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "setsyl/error.hpp"
#include "setsyl/formula.hpp"
#include "setsyl/hf_set.hpp"
#include "setsyl/hf_universe.hpp"

namespace setsyl {

struct OracleOptions {
  std::size_t rank_bound = 3;
  /// Extra rank allowed for `_g` variables introduced by normalization.
  std::size_t fresh_slack = 0;
  std::uint64_t budget = 100'000'000;
};

struct OracleResult {
  bool sat = false;
  SetAssignment model;
  std::uint64_t nodes = 0;
  explicit operator bool() const { return sat; }
};

struct ImplicationResult {
  bool implied = false;
  SetAssignment countermodel;
};

namespace detail {

class BoundedSearch {
 public:
  BoundedSearch(const Formula& f, const OracleOptions& opt) : opt_(opt) {
    vars_ = free_vars(f);
    if (vars_.size() > 64) throw SearchSpaceTooLargeError("oracle supports at most 64 variables");
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      index_.emplace(vars_[i].name, static_cast<int>(i));
      std::size_t r = opt.rank_bound;
      if (vars_[i].name.starts_with(kFreshPrefix)) r += opt.fresh_slack;
      static constexpr unsigned kBits[] = {0, 1, 2, 4, 16};
      universe_size(r);  // throws past the cap
      width_.push_back(kBits[r]);
    }
    val_.assign(vars_.size(), 0);
    cons_of_.resize(vars_.size());
    flatten(f, true);
    for (std::size_t c = 0; c < cons_.size(); ++c)
      for (std::size_t v = 0; v < vars_.size(); ++v)
        if ((cons_[c].mask >> v) & 1u) cons_of_[v].push_back(c);
  }

  const std::vector<Variable>& vars() const { return vars_; }
  std::uint64_t nodes() const { return nodes_; }

  bool find() {
    for (const auto& c : cons_)
      if (c.mask == 0 && !check(c)) return false;
    return search(all_mask());
  }

  void find_all(const std::function<void(const SetAssignment&)>& visit) {
    for (const auto& c : cons_)
      if (c.mask == 0 && !check(c)) return;
    search_all(all_mask(), visit);
  }

  SetAssignment model() const {
    SetAssignment m;
    for (std::size_t i = 0; i < vars_.size(); ++i)
      m.set(vars_[i], HFSet::from_code(static_cast<std::uint32_t>(val_[i])));
    return m;
  }

 private:
  enum class State : std::uint8_t { Code, Undef, Big };
  struct Val {
    State state = State::Code;
    std::uint64_t code = 0;
  };

  struct Node {
    Op op;
    int var = -1;
    int a = -1;
    int b = -1;
    std::uint64_t mask = 0;  // variables occurring below
    bool boolean = false;    // built from variables, ∅, ∪, ∩, ∖ only
    const Term* src = nullptr;
  };

  struct AtomRef {
    Pred pred;
    int l;
    int r;
    const Atom* src;
  };

  struct Form {
    FormulaKind kind;
    bool positive = true;  // only for atoms
    int atom = -1;
    std::vector<int> children;
  };

  struct Constraint {
    bool literal = true;
    bool positive = true;
    int atom = -1;  // literal constraint
    int form = -1;  // residual formula
    std::uint64_t mask = 0;
  };

  std::uint64_t all_mask() const {
    return vars_.size() == 64 ? ~0ull : ((1ull << vars_.size()) - 1);
  }

  int compile_term(const Term& t) {
    Node n;
    n.op = t.op();
    n.src = &t;
    switch (t.op()) {
      case Op::Var:
        n.var = index_.at(t.variable().name);
        n.mask = 1ull << n.var;
        n.boolean = true;
        break;
      case Op::Empty: n.boolean = true; break;
      case Op::Union:
      case Op::Inter:
      case Op::Setminus:
      case Op::Cross:
      case Op::UCross:
        n.a = compile_term(t.arg(0));
        n.b = compile_term(t.arg(1));
        n.mask = nodes_pool_[n.a].mask | nodes_pool_[n.b].mask;
        n.boolean = is_mls_op(t.op()) && nodes_pool_[n.a].boolean && nodes_pool_[n.b].boolean;
        break;
      case Op::Single:
      case Op::Pow:
      case Op::BigUnion:
      case Op::BigInter:
        n.a = compile_term(t.arg(0));
        n.mask = nodes_pool_[n.a].mask;
        break;
      default:
        throw UnsupportedAtomError("term " + print_term(t) + " is not a set term");
    }
    nodes_pool_.push_back(n);
    return static_cast<int>(nodes_pool_.size() - 1);
  }

  int compile_atom(const Atom& a) {
    if (a.pred == Pred::Leq || a.pred == Pred::IsAtom)
      throw UnsupportedAtomError("atom " + print_atom(a) + " is not a set-theory atom");
    int l = compile_term(a.lhs());
    int r = compile_term(a.rhs());
    atoms_.push_back(AtomRef{a.pred, l, r, &a});
    return static_cast<int>(atoms_.size() - 1);
  }

  std::uint64_t atom_mask(int a) const {
    return nodes_pool_[atoms_[a].l].mask | nodes_pool_[atoms_[a].r].mask;
  }

  int compile_form(const Formula& f, bool positive, std::uint64_t& mask) {
    Form out;
    out.kind = f.kind();
    switch (f.kind()) {
      case FormulaKind::Atom:
        out.atom = compile_atom(f.as_atom());
        out.positive = positive;
        mask |= atom_mask(out.atom);
        break;
      case FormulaKind::Not: return compile_form(f.child(0), !positive, mask);
      case FormulaKind::And:
      case FormulaKind::Or: {
        bool is_and = (f.kind() == FormulaKind::And) == positive;
        out.kind = is_and ? FormulaKind::And : FormulaKind::Or;
        for (const auto& c : f.children()) out.children.push_back(compile_form(c, positive, mask));
        break;
      }
    }
    forms_.push_back(std::move(out));
    return static_cast<int>(forms_.size() - 1);
  }

  void flatten(const Formula& f, bool positive) {
    switch (f.kind()) {
      case FormulaKind::Atom: {
        Constraint c;
        c.atom = compile_atom(f.as_atom());
        c.positive = positive;
        c.mask = atom_mask(c.atom);
        cons_.push_back(c);
        return;
      }
      case FormulaKind::Not: flatten(f.child(0), !positive); return;
      case FormulaKind::And:
      case FormulaKind::Or:
        if ((f.kind() == FormulaKind::And) == positive) {
          for (const auto& c : f.children()) flatten(c, positive);
          return;
        }
        break;
    }
    Constraint c;
    c.literal = false;
    c.form = compile_form(f, positive, c.mask);
    cons_.push_back(c);
  }

  // -- evaluation ----------------------------------------------------------

  static std::uint64_t shl(std::uint64_t k, bool& big) {
    if (k >= 64) {
      big = true;
      return 0;
    }
    return 1ull << k;
  }

  Val eval(int idx) const {
    const Node& n = nodes_pool_[idx];
    switch (n.op) {
      case Op::Var: return Val{State::Code, val_[n.var]};
      case Op::Empty: return Val{};
      default: break;
    }
    Val a = eval(n.a);
    Val b = n.b >= 0 ? eval(n.b) : Val{};
    if (a.state == State::Undef || b.state == State::Undef) return Val{State::Undef, 0};
    if (a.state == State::Big || b.state == State::Big) return Val{State::Big, 0};
    bool big = false;
    std::uint64_t out = 0;
    switch (n.op) {
      case Op::Union: out = a.code | b.code; break;
      case Op::Inter: out = a.code & b.code; break;
      case Op::Setminus: out = a.code & ~b.code; break;
      case Op::Single: out = shl(a.code, big); break;
      case Op::Pow: {
        if (a.code >= 64) return Val{State::Big, 0};
        std::uint64_t s = 0;
        do {
          out |= 1ull << s;
          s = (s - a.code) & a.code;
        } while (s != 0);
        break;
      }
      case Op::BigUnion:
      case Op::BigInter: {
        if (n.op == Op::BigInter) {
          if (a.code == 0) return Val{State::Undef, 0};
          out = ~0ull;
        }
        for (std::uint64_t m = a.code; m != 0; m &= m - 1) {
          auto i = static_cast<std::uint64_t>(std::countr_zero(m));
          out = n.op == Op::BigUnion ? (out | i) : (out & i);
        }
        break;
      }
      case Op::Cross:
      case Op::UCross:
        for (std::uint64_t ma = a.code; ma != 0; ma &= ma - 1) {
          auto p = static_cast<std::uint64_t>(std::countr_zero(ma));
          for (std::uint64_t mb = b.code; mb != 0; mb &= mb - 1) {
            auto q = static_cast<std::uint64_t>(std::countr_zero(mb));
            std::uint64_t pq = shl(p, big) | shl(q, big);
            std::uint64_t elem = pq;
            if (n.op == Op::Cross) elem = shl(shl(p, big), big) | shl(pq, big);
            out |= shl(elem, big);
            if (big) return Val{State::Big, 0};
          }
        }
        break;
      default: break;
    }
    if (big) return Val{State::Big, 0};
    return Val{State::Code, out};
  }

  const HFSet& decode(std::uint64_t code) const {
    auto it = decoded_.find(code);
    if (it != decoded_.end()) return it->second;
    return decoded_.emplace(code, HFSet::from_code(static_cast<std::uint32_t>(code))).first->second;
  }

  bool eval_atom_ref(int idx) const {
    const AtomRef& a = atoms_[idx];
    Val l = eval(a.l);
    Val r = eval(a.r);
    if (l.state == State::Undef || r.state == State::Undef) return false;
    if (l.state == State::Big || r.state == State::Big) {
      // Exact fallback on HF values.
      return eval_set_atom(*a.src, [&](const Variable& v) -> const HFSet& {
        return decode(val_[index_.at(v.name)]);
      });
    }
    switch (a.pred) {
      case Pred::In: return l.code < 64 && ((r.code >> l.code) & 1u);
      case Pred::Eq: return l.code == r.code;
      case Pred::Subset: return (l.code & ~r.code) == 0;
      default: return false;
    }
  }

  bool eval_form(int idx) const {
    const Form& f = forms_[idx];
    switch (f.kind) {
      case FormulaKind::Atom: return eval_atom_ref(f.atom) == f.positive;
      case FormulaKind::And:
        for (int c : f.children)
          if (!eval_form(c)) return false;
        return true;
      case FormulaKind::Or:
        for (int c : f.children)
          if (eval_form(c)) return true;
        return false;
      default: return false;
    }
  }

  bool check(const Constraint& c) const {
    if (c.literal) return eval_atom_ref(c.atom) == c.positive;
    return eval_form(c.form);
  }

  // -- candidates ----------------------------------------------------------

  struct Candidates {
    enum class Kind : std::uint8_t { None, Single, Members, Pattern } kind = Kind::None;
    std::uint64_t base = 0;  // Single: value; Members: member mask; Pattern: forced ones
    std::uint64_t free = 0;  // Pattern: free bits
    std::uint64_t count = 0;
  };

  std::uint64_t domain_bits(int v) const {
    unsigned w = width_[v];
    return w == 64 ? ~0ull : ((1ull << w) - 1);
  }

  std::uint64_t domain_size(int v) const { return 1ull << width_[v]; }

  Candidates candidates(int v, std::uint64_t assigned) {
    const std::uint64_t vbit = 1ull << v;
    const std::uint64_t dom = domain_size(v);
    std::uint64_t allow0 = ~0ull;
    std::uint64_t allow1 = domain_bits(v);
    std::optional<std::uint64_t> forced;
    bool impossible = false;
    std::optional<std::uint64_t> members;

    const std::uint64_t saved = val_[v];
    for (std::size_t ci : cons_of_[v]) {
      const Constraint& c = cons_[ci];
      if ((c.mask & ~assigned) != vbit || !c.literal) continue;
      const AtomRef& a = atoms_[c.atom];
      const Node& l = nodes_pool_[a.l];
      const Node& r = nodes_pool_[a.r];
      if (c.positive && a.pred == Pred::Eq) {
        const bool left = l.op == Op::Var && l.var == v;
        const bool right = r.op == Op::Var && r.var == v;
        const Node& other = left ? r : l;
        if (left != right && (other.mask & vbit) == 0) {
          Val o = eval(left ? a.r : a.l);
          if (o.state != State::Code || o.code >= dom || (forced && *forced != o.code)) {
            impossible = true;
          } else {
            forced = o.code;
          }
          continue;
        }
      }
      if (c.positive && a.pred == Pred::In && l.op == Op::Var && l.var == v && (r.mask & vbit) == 0) {
        Val o = eval(a.r);
        if (o.state == State::Undef) {
          impossible = true;
        } else if (o.state == State::Code) {
          std::uint64_t m = o.code & (dom >= 64 ? ~0ull : ((1ull << dom) - 1));
          members = members ? (*members & m) : m;
        }
        continue;
      }
      if ((a.pred == Pred::Eq || a.pred == Pred::Subset) && c.positive && l.boolean && r.boolean) {
        val_[v] = 0;
        std::uint64_t l0 = eval(a.l).code, r0 = eval(a.r).code;
        val_[v] = ~0ull;
        std::uint64_t l1 = eval(a.l).code, r1 = eval(a.r).code;
        val_[v] = saved;
        if (a.pred == Pred::Eq) {
          allow0 &= ~(l0 ^ r0);
          allow1 &= ~(l1 ^ r1);
        } else {
          allow0 &= ~(l0 & ~r0);
          allow1 &= ~(l1 & ~r1);
        }
        continue;
      }
      if (a.pred == Pred::In && r.boolean && (l.mask & vbit) == 0) {
        Val k = eval(a.l);
        val_[v] = 0;
        std::uint64_t t0 = eval(a.r).code;
        val_[v] = ~0ull;
        std::uint64_t t1 = eval(a.r).code;
        val_[v] = saved;
        if (k.state != State::Code || k.code >= 64) {
          if (c.positive) impossible = true;
          continue;
        }
        const std::uint64_t bit = 1ull << k.code;
        const bool want = c.positive;
        if (((t0 & bit) != 0) != want) allow0 &= ~bit;
        if (((t1 & bit) != 0) != want) allow1 &= ~bit;
        continue;
      }
    }

    Candidates out;
    if (impossible || (allow0 | allow1) != ~0ull) return out;
    if (forced) {
      out.kind = Candidates::Kind::Single;
      out.base = *forced;
      out.count = 1;
      return out;
    }
    const std::uint64_t free = allow0 & allow1;
    const std::uint64_t ones = allow1 & ~allow0;
    const int nfree = std::popcount(free);
    const std::uint64_t pattern_count = nfree >= 63 ? ~0ull : (1ull << nfree);
    if (members && static_cast<std::uint64_t>(std::popcount(*members)) < pattern_count) {
      out.kind = Candidates::Kind::Members;
      out.base = *members;
      out.count = static_cast<std::uint64_t>(std::popcount(*members));
      return out;
    }
    out.kind = Candidates::Kind::Pattern;
    out.base = ones;
    out.free = free;
    out.count = pattern_count;
    return out;
  }

  template <typename Fn>
  bool for_each_candidate(const Candidates& c, Fn&& fn) {
    switch (c.kind) {
      case Candidates::Kind::None: return false;
      case Candidates::Kind::Single: return fn(c.base);
      case Candidates::Kind::Members:
        for (std::uint64_t m = c.base; m != 0; m &= m - 1)
          if (fn(static_cast<std::uint64_t>(std::countr_zero(m)))) return true;
        return false;
      case Candidates::Kind::Pattern: {
        std::uint64_t s = 0;
        do {
          if (fn(c.base | s)) return true;
          s = (s - c.free) & c.free;
        } while (s != 0);
        return false;
      }
    }
    return false;
  }

  // -- search --------------------------------------------------------------

  void tick() {
    if (++nodes_ > opt_.budget)
      throw SearchSpaceTooLargeError("oracle exceeded its budget of " + std::to_string(opt_.budget) +
                                     " nodes");
  }

  bool ready_ok(int v) const {
    for (std::size_t ci : cons_of_[v]) {
      const Constraint& c = cons_[ci];
      if ((c.mask & ~assigned_) == 0 && !check(c)) return false;
    }
    return true;
  }

  std::pair<int, Candidates> pick(std::uint64_t open) {
    int best = -1;
    Candidates best_c;
    for (std::uint64_t m = open; m != 0; m &= m - 1) {
      int v = std::countr_zero(m);
      Candidates c = candidates(v, assigned_);
      if (best < 0 || c.count < best_c.count) {
        best = v;
        best_c = c;
        if (c.count <= 1) break;
      }
    }
    return {best, best_c};
  }

  std::vector<std::uint64_t> components(std::uint64_t open) const {
    std::vector<std::uint64_t> comps;
    std::uint64_t rest = open;
    while (rest != 0) {
      std::uint64_t comp = rest & (~rest + 1);
      bool grew = true;
      while (grew) {
        grew = false;
        for (const auto& c : cons_) {
          std::uint64_t u = c.mask & open;
          if ((u & comp) != 0 && (u & ~comp) != 0) {
            comp |= u;
            grew = true;
          }
        }
      }
      comps.push_back(comp);
      rest &= ~comp;
    }
    return comps;
  }

  bool search(std::uint64_t open) {
    if (open == 0) return true;
    auto comps = components(open);
    if (comps.size() > 1) {
      for (std::uint64_t comp : comps) {
        if (!search_component(comp)) {
          assigned_ &= ~open;
          return false;
        }
      }
      return true;
    }
    return search_component(open);
  }

  bool search_component(std::uint64_t open) {
    auto [v, cands] = pick(open);
    const std::uint64_t vbit = 1ull << v;
    bool found = for_each_candidate(cands, [&](std::uint64_t code) {
      tick();
      val_[v] = code;
      assigned_ |= vbit;
      if (ready_ok(v) && search(open & ~vbit)) return true;
      assigned_ &= ~vbit;
      return false;
    });
    if (!found) assigned_ &= ~open;
    return found;
  }

  void search_all(std::uint64_t open, const std::function<void(const SetAssignment&)>& visit) {
    if (open == 0) {
      visit(model());
      return;
    }
    auto [v, cands] = pick(open);
    const std::uint64_t vbit = 1ull << v;
    for_each_candidate(cands, [&](std::uint64_t code) {
      tick();
      val_[v] = code;
      assigned_ |= vbit;
      if (ready_ok(v)) search_all(open & ~vbit, visit);
      assigned_ &= ~vbit;
      return false;
    });
  }

  OracleOptions opt_;
  std::vector<Variable> vars_;
  std::unordered_map<std::string, int> index_;
  std::vector<unsigned> width_;
  std::vector<Node> nodes_pool_;
  std::vector<AtomRef> atoms_;
  std::vector<Form> forms_;
  std::vector<Constraint> cons_;
  std::vector<std::vector<std::size_t>> cons_of_;
  mutable std::vector<std::uint64_t> val_;
  std::uint64_t assigned_ = 0;
  std::uint64_t nodes_ = 0;
  mutable std::unordered_map<std::uint64_t, HFSet> decoded_;
};

}  // namespace detail

/// Searches all assignments of free variables into the bounded universe.
/// A returned model has been re-checked with eval_formula.
inline OracleResult oracle_sat(const Formula& f, const OracleOptions& opt) {
  detail::BoundedSearch s(f, opt);
  OracleResult out;
  out.sat = s.find();
  out.nodes = s.nodes();
  if (out.sat) {
    out.model = s.model();
    if (!eval_formula(f, out.model))
      throw InvariantViolation("oracle model fails evaluation for " + print_formula(f));
  }
  return out;
}

inline OracleResult oracle_sat(const Formula& f, std::size_t rank_bound) {
  OracleOptions opt;
  opt.rank_bound = rank_bound;
  return oracle_sat(f, opt);
}

/// Bounded implication: f ∧ ¬g has no model of rank <= bound.
inline ImplicationResult oracle_implies(const Formula& f, const Formula& g,
                                        const OracleOptions& opt) {
  auto r = oracle_sat(Formula::conjunction({f, Formula::negation(g)}), opt);
  return ImplicationResult{!r.sat, r.model};
}

inline ImplicationResult oracle_implies(const Formula& f, const Formula& g, std::size_t rank_bound) {
  OracleOptions opt;
  opt.rank_bound = rank_bound;
  return oracle_implies(f, g, opt);
}

/// Visits every model of f within the bound.
inline void oracle_all_models(const Formula& f, const OracleOptions& opt,
                              const std::function<void(const SetAssignment&)>& visit) {
  detail::BoundedSearch s(f, opt);
  s.find_all([&](const SetAssignment& m) {
    if (!eval_formula(f, m))
      throw InvariantViolation("oracle model fails evaluation for " + print_formula(f));
    visit(m);
  });
}

// ---------------------------------------------------------------------------

struct NonConvexitySchema {
  Formula phi;
  std::vector<Variable> elements;
  std::vector<std::pair<Variable, Variable>> candidates;

  /// The disjunction of all candidate equalities.
  Formula disjunction() const {
    std::vector<Formula> eqs;
    for (const auto& [a, b] : candidates)
      eqs.push_back(Formula::atom(Atom::eq(Term::var(a), Term::var(b))));
    return Formula::disjunction(std::move(eqs));
  }
};

/// Φ := φ ∧ x1 ∈ x̄ ∧ ... ∧ x_{k+1} ∈ x̄, with the pairwise equalities among
/// the x_i. A `true` φ contributes no conjunct.
inline NonConvexitySchema nonconvexity_schema(const Formula& phi, const Variable& xbar,
                                              std::size_t k) {
  if (k < 2) throw PreconditionError("nonconvexity_schema needs k >= 2");
  VarList taken;
  collect_vars(phi, taken);
  taken.insert(xbar);
  NonConvexitySchema out;
  std::vector<Formula> parts;
  if (!(phi == Formula::truth())) parts.push_back(phi);
  for (std::size_t i = 1; i <= k + 1; ++i) {
    std::string name = "x" + std::to_string(i);
    while (taken.contains(Variable(name))) name += "'";
    Variable xi(name);
    taken.insert(xi);
    out.elements.push_back(xi);
    parts.push_back(Formula::atom(Atom::in(Term::var(xi), Term::var(xbar))));
  }
  for (std::size_t i = 0; i < out.elements.size(); ++i)
    for (std::size_t j = i + 1; j < out.elements.size(); ++j)
      out.candidates.emplace_back(out.elements[i], out.elements[j]);
  out.phi = parts.size() == 1 ? parts.front() : Formula::conjunction(std::move(parts));
  return out;
}

}  // namespace setsyl
