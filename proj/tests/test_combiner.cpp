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
#include <algorithm>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "setsyl/combiner.hpp"
#include "setsyl/oracle.hpp"
#include "setsyl/parser.hpp"

namespace {

using namespace setsyl;

LiteralConjunction lits(const std::string& text) {
  auto d = dnf_literals(parse_formula(text));
  EXPECT_EQ(d.size(), 1u);
  return d.front();
}

std::vector<std::string> printed(const LiteralConjunction& ls) {
  std::vector<std::string> out;
  for (const auto& l : ls) out.push_back(print_literal(l));
  return out;
}

bool has_pair(const std::vector<VarPair>& ps, const char* a, const char* b) {
  return std::any_of(ps.begin(), ps.end(), [&](const VarPair& p) {
    return (p.first.name == a && p.second.name == b) || (p.first.name == b && p.second.name == a);
  });
}

TEST(Purify, ListInsideArithmetic) {
  auto p = purify(lits("(and (= x (car (cons y l))) (<= (+ x 1) y))"));
  EXPECT_EQ(printed(p.list), (std::vector<std::string>{"(= _p1 (cons y l))", "(= x (car _p1))"}));
  EXPECT_EQ(printed(p.lra), (std::vector<std::string>{"(<= (+ x 1) y)"}));
  EXPECT_TRUE(p.mls.empty());
  EXPECT_EQ(p.shared, (std::vector<Variable>{Variable("x"), Variable("y")}));
  EXPECT_EQ(printed(p.fresh_defs), (std::vector<std::string>{"(= _p1 (cons y l))"}));
}

TEST(Purify, AlreadyPure) {
  auto in = lits("(and (in a b) (<= p q))");
  auto p = purify(in);
  EXPECT_EQ(printed(p.mls), (std::vector<std::string>{"(in a b)"}));
  EXPECT_EQ(printed(p.lra), (std::vector<std::string>{"(<= p q)"}));
  EXPECT_TRUE(p.fresh_defs.empty());
  EXPECT_TRUE(p.shared.empty());
}

TEST(Purify, AlienUnderArithmetic) {
  auto p = purify(lits("(= x (+ (car y) 1))"));
  EXPECT_EQ(printed(p.lra), (std::vector<std::string>{"(= x (+ _p1 1))"}));
  EXPECT_EQ(printed(p.list), (std::vector<std::string>{"(= _p1 (car y))"}));
  EXPECT_EQ(p.shared, (std::vector<Variable>{Variable("_p1")}));
}

TEST(Purify, PartitionsArePure) {
  auto p = purify(lits("(and (in (car x) (union y (cdr z))) (<= (+ (car x) u) 3) (not (= x u)) (atom (cons u y)))"));
  for (Theory t : {Theory::MLS, Theory::LRA, Theory::LIST})
    for (const auto& l : p.partition(t)) EXPECT_NO_THROW(classify_atom(l.atom)) << print_literal(l);
}

TEST(Purify, SharedEqualityRouting) {
  auto p = purify(lits("(and (in a b) (<= a 1) (not (= a b)) (= b c))"));
  EXPECT_EQ(printed(p.mls), (std::vector<std::string>{"(in a b)", "(not (= a b))", "(= b c)"}));
  EXPECT_EQ(printed(p.lra), (std::vector<std::string>{"(<= a 1)"}));
}

TEST(Purify, SetOnlyEquisatisfiable) {
  const char* inputs[] = {"(and (in x (union y z)) (not (in x y)))", "(and (= x (inter y z)) (in y x))",
                          "(and (subset (setminus x y) z) (not (= x z)))"};
  for (const char* in : inputs) {
    auto p = purify(lits(in));
    LiteralConjunction all = p.mls;
    EXPECT_EQ(oracle_sat(parse_formula(in), 3).sat, oracle_sat(Formula::conjunction_of(all), 3).sat) << in;
  }
}

TEST(Lra, AntisymmetryImpliesEquality) {
  LraState s;
  for (const auto& l : lits("(and (<= x y) (<= y x))")) s.assert_literal(l);
  EXPECT_TRUE(lra_check(s).sat);
  auto imp = lra_implied(s, {Variable("x"), Variable("y")});
  EXPECT_TRUE(has_pair(imp, "x", "y"));
}

TEST(Lra, StrictChainUnsat) {
  LraState s;
  for (const auto& l : lits("(and (<= (+ x 1) y) (<= y x))")) s.assert_literal(l);
  EXPECT_FALSE(lra_check(s).sat);
}

TEST(Lra, Empty) {
  LraState s;
  EXPECT_TRUE(lra_check(s).sat);
  EXPECT_TRUE(lra_implied(s, {Variable("x"), Variable("y")}).empty());
}

TEST(Lra, SamplePointSatisfiesEverything) {
  LraState s;
  auto in = lits("(and (<= (+ x y) 3) (not (<= x 1/2)) (not (= y 0)) (= (+ z (- x)) 1/3) (not (= x 2)))");
  for (const auto& l : in) s.assert_literal(l);
  auto r = lra_check(s);
  ASSERT_TRUE(r.sat);
  const auto& pt = r.point;
  EXPECT_LE(pt.at("x") + pt.at("y"), 3);
  EXPECT_GT(pt.at("x"), Rational(1, 2));
  EXPECT_NE(pt.at("y"), 0);
  EXPECT_EQ(pt.at("z") - pt.at("x"), Rational(1, 3));
  EXPECT_NE(pt.at("x"), 2);
}

TEST(Lra, DisequalityAgainstPoint) {
  LraState s;
  for (const auto& l : lits("(and (<= x 0) (<= 0 x) (not (= x 0)))")) s.assert_literal(l);
  EXPECT_FALSE(lra_check(s).sat);
}

TEST(Lra, Nonlinear) {
  LraState s;
  EXPECT_THROW(s.assert_literal(lits("(= x (union y z))").front()), NonlinearTermError);
}

TEST(List, CarOfCons) {
  ListState s;
  for (const auto& l : lits("(= x (car (cons y l)))")) s.assert_literal(l);
  EXPECT_TRUE(list_check(s).sat);
  EXPECT_TRUE(has_pair(list_implied(s, {Variable("x"), Variable("y")}), "x", "y"));
}

TEST(List, ConsIsNeverAtom) {
  ListState s;
  for (const auto& l : lits("(atom (cons a b))")) s.assert_literal(l);
  EXPECT_FALSE(list_check(s).sat);
}

TEST(List, NonAtomDecomposes) {
  ListState s;
  for (const auto& l : lits("(and (not (atom x)) (= (car x) a) (= (cdr x) d) (= y (cons a d)))"))
    s.assert_literal(l);
  EXPECT_TRUE(list_check(s).sat);
  EXPECT_TRUE(has_pair(list_implied(s, {Variable("x"), Variable("y")}), "x", "y"));
}

TEST(List, DisequalityClash) {
  ListState s;
  for (const auto& l : lits("(and (= x (cdr (cons a b))) (not (= x b)))")) s.assert_literal(l);
  EXPECT_FALSE(list_check(s).sat);
}

TEST(List, CyclicAllowed) {
  ListState s;
  for (const auto& l : lits("(= x (cons a x))")) s.assert_literal(l);
  EXPECT_TRUE(list_check(s).sat);
}

TEST(Propagate, MlsThenLra) {
  auto r = solve_conjunction(lits("(and (= z (setminus z z)) (= x (setminus y z)) (<= (+ x 1) y))"));
  EXPECT_FALSE(r.sat);
  EXPECT_EQ(r.culprit, "lra");
  EXPECT_TRUE(has_pair(r.propagated, "x", "y"));
  EXPECT_LE(r.rounds, 1u);
}

TEST(Propagate, ListThenLra) {
  auto r = solve_conjunction(lits("(and (= x (car (cons y l))) (<= (+ x 1) y))"));
  EXPECT_FALSE(r.sat);
  EXPECT_EQ(r.culprit, "lra");
  EXPECT_TRUE(has_pair(r.propagated, "x", "y"));
}

TEST(Propagate, NoSharedVariables) {
  auto r = solve_conjunction(lits("(and (in a b) (<= (+ p 1) q))"));
  EXPECT_TRUE(r.sat);
  EXPECT_EQ(r.rounds, 0u);
  EXPECT_TRUE(eval_formula(parse_formula("(in a b)"), r.mls_model));
  EXPECT_LE(r.lra_point.at("p") + 1, r.lra_point.at("q"));
}

TEST(Propagate, PureSetScriptMatchesSolver) {
  const char* inputs[] = {"(and (in x y) (in y x))", "(and (subset x y) (not (= x y)))",
                          "(and (= x (union y z)) (not (in y x)))"};
  for (const char* in : inputs) {
    Script s;
    s.asserts.push_back(parse_formula(in));
    EXPECT_EQ(solve_combined(s).sat, solve_formula(parse_formula(in)).sat) << in;
  }
}

TEST(Propagate, OrderIndependent) {
  const char* inputs[] = {"(and (= z (setminus z z)) (= x (setminus y z)) (<= (+ x 1) y))",
                          "(and (= x (car (cons y l))) (<= (+ x 1) y))", "(and (in a b) (<= (+ p 1) q))",
                          "(and (<= x y) (<= y x) (in x w) (not (in y w)))"};
  std::vector<std::string> order{"list", "lra", "mls"};
  for (const char* in : inputs) {
    CombineOptions base;
    const bool expected = solve_conjunction(lits(in), base).sat;
    std::sort(order.begin(), order.end());
    do {
      CombineOptions opt;
      opt.plugins = order;
      auto r = solve_conjunction(lits(in), opt);
      EXPECT_EQ(r.sat, expected) << in;
      const std::size_t k = r.problem.shared.size();
      EXPECT_LE(r.rounds, k * (k - 1) / 2);
    } while (std::next_permutation(order.begin(), order.end()));
  }
}

TEST(Propagate, ArithmeticEqualityReachesSets) {
  auto r = solve_conjunction(lits("(and (<= x y) (<= y x) (in x w) (not (in y w)))"));
  EXPECT_FALSE(r.sat);
  EXPECT_EQ(r.culprit, "mls");
}

class NonConvex : public TheoryPlugin {
 public:
  std::string name() const override { return "nc"; }
  Theory theory() const override { return Theory::MLS; }
  bool is_convex() const override { return false; }
  bool assert_literals(const LiteralConjunction&) override { return true; }
  std::vector<VarPair> implied_equalities(const std::vector<Variable>&) override { return {}; }
};

TEST(Propagate, RejectsNonConvexPlugins) {
  NonConvex p;
  EXPECT_THROW(propagate(purify(lits("(in a b)")), {&p}), NonConvexPluginError);
}

TEST(Propagate, MissingPlugin) {
  CombineOptions opt;
  opt.plugins = {"mls"};
  EXPECT_THROW(solve_conjunction(lits("(and (in a b) (<= a 1))"), opt), UnsupportedAtomError);
}

}  // namespace
