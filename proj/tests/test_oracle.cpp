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
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "setsyl/oracle.hpp"
#include "setsyl/parser.hpp"

namespace {

using namespace setsyl;

const HFSet E;
const HFSet S1 = hf({E});
const HFSet P2 = hf({E, S1});

// Plain nested-loop enumeration over HFSet values, sharing nothing with the
// code-based search except eval_formula.
bool naive_sat(const Formula& f, std::size_t rank) {
  const auto vars = free_vars(f);
  const auto U = enumerate_universe(rank);
  SetAssignment m;
  std::function<bool(std::size_t)> rec = [&](std::size_t i) {
    if (i == vars.size()) return eval_formula(f, m);
    for (const auto& s : U) {
      m.set(vars[i], s);
      if (rec(i + 1)) return true;
    }
    return false;
  };
  return rec(0);
}

TEST(OracleSat, WellFoundedness) {
  EXPECT_FALSE(oracle_sat(parse_formula("(and (in x y) (in y x))"), 3).sat);
  EXPECT_FALSE(oracle_sat(parse_formula("(in x x)"), 3).sat);
}

TEST(OracleSat, SmallestModelFirst) {
  auto r = oracle_sat(parse_formula("(in x y)"), 1);
  ASSERT_TRUE(r.sat);
  EXPECT_EQ(r.model.at("x"), E);
  EXPECT_EQ(r.model.at("y"), S1);
}

TEST(OracleSat, UnionProbeFindsTwoElements) {
  auto f = parse_formula(
      "(and (= x empty) (= (bigU y) x) (= (bigU xbar) y) (in x1 xbar) (in x2 xbar) (not (= x1 x2)))");
  auto r = oracle_sat(f, 3);
  ASSERT_TRUE(r.sat);
  EXPECT_EQ(r.model.at("xbar"), P2);
  EXPECT_TRUE(eval_formula(f, r.model));
}

TEST(OracleSat, NoModelAtLowerBound) {
  auto f = parse_formula("(and (= e empty) (= a (single e)) (= b (single a)) (in b c))");
  EXPECT_FALSE(oracle_sat(f, 2).sat);
  EXPECT_TRUE(oracle_sat(f, 3).sat);
}

TEST(OracleSat, FreshSlack) {
  auto f = parse_formula("(and (= e empty) (= w (pow e)) (= z (pow w)) (= y (pow z)) (in y _g1))");
  OracleOptions opt;
  opt.rank_bound = 3;
  EXPECT_FALSE(oracle_sat(f, opt).sat);
  opt.fresh_slack = 1;
  auto r = oracle_sat(f, opt);
  ASSERT_TRUE(r.sat);
  EXPECT_EQ(r.model.at("_g1").rank(), 4u);
}

TEST(OracleSat, Budget) {
  auto f = parse_formula("(and (in a b) (in b c) (in c d) (not (= d e)) (in e f) (subset f g) (not (= g a)))");
  OracleOptions opt;
  opt.budget = 3;
  EXPECT_THROW(oracle_sat(f, opt), SearchSpaceTooLargeError);
}

TEST(OracleSat, AgreesWithNaiveEnumeration) {
  const char* atoms[] = {"(in x y)",     "(in y z)",       "(= x y)",         "(= x empty)",
                         "(subset x z)", "(= x (union y z))", "(= z (inter x y))", "(= y (setminus z x))",
                         "(in x z)",     "(= y (single x))", "(= z (pow x))",   "(= (bigU z) y)"};
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> pick(0, 11), len(1, 4), coin(0, 2);
  for (int i = 0; i < 400; ++i) {
    std::string text = "(and";
    for (int k = len(rng); k > 0; --k) {
      std::string a = atoms[pick(rng)];
      text += coin(rng) == 0 ? " (not " + a + ")" : " " + a;
    }
    text += ")";
    const auto f = parse_formula(text);
    const std::size_t rank = i % 4 == 0 ? 3 : 2;
    ASSERT_EQ(oracle_sat(f, rank).sat, naive_sat(f, rank)) << text << " rank " << rank;
  }
}

TEST(OracleAllModels, PowerChainHasOneModel) {
  auto f = parse_formula("(and (= x empty) (= y (pow x)) (= xbar (pow y)))");
  std::vector<SetAssignment> models;
  oracle_all_models(f, OracleOptions{}, [&](const SetAssignment& m) { models.push_back(m); });
  ASSERT_EQ(models.size(), 1u);
  EXPECT_EQ(models[0].at("xbar"), P2);
}

TEST(OracleImplies, ProductEmptyImpliesFactorEmpty) {
  auto f = parse_formula("(and (= e (cross x y)) (= e (setminus e e)))");
  auto g = parse_formula("(or (= x empty) (= y empty))");
  EXPECT_TRUE(oracle_implies(f, g, 3).implied);
}

TEST(OracleImplies, SingleFactorRefuted) {
  auto f = parse_formula("(= (cross x y) empty)");
  auto r = oracle_implies(f, parse_formula("(= x empty)"), 3);
  ASSERT_FALSE(r.implied);
  EXPECT_FALSE(r.countermodel.at("x").empty());
  EXPECT_EQ(r.countermodel.at("y"), E);
  EXPECT_EQ(r.countermodel.at("x"), S1);
}

TEST(OracleImplies, Reflexive) {
  auto f = parse_formula("(and (in x y) (= z (union x y)))");
  EXPECT_TRUE(oracle_implies(f, f, 3).implied);
}

TEST(Schema, Singletons) {
  auto phi = parse_formula("(and (= x (single y)) (= x' (single y')) (= xbar (union x x')))");
  auto s = nonconvexity_schema(phi, Variable("xbar"), 2);
  ASSERT_EQ(s.elements.size(), 3u);
  EXPECT_EQ(s.candidates.size(), 3u);
  EXPECT_EQ(print_formula(s.phi),
            "(and (and (= x (single y)) (= x' (single y')) (= xbar (union x x'))) (in x1 xbar) (in x2 xbar) "
            "(in x3 xbar))");
  EXPECT_TRUE(oracle_implies(s.phi, s.disjunction(), 3).implied);
  for (const auto& [a, b] : s.candidates)
    EXPECT_FALSE(oracle_implies(s.phi, Formula::atom(Atom::eq(Term::var(a), Term::var(b))), 3).implied);
}

TEST(Schema, PowerSet) {
  auto phi = parse_formula("(and (= x empty) (= y (pow x)) (= xbar (pow y)))");
  auto s = nonconvexity_schema(phi, Variable("xbar"), 2);
  EXPECT_EQ(s.candidates.size(), 3u);
  EXPECT_TRUE(oracle_implies(s.phi, s.disjunction(), 3).implied);
}

TEST(Schema, TrivialPhiImpliesNothing) {
  auto s = nonconvexity_schema(Formula::truth(), Variable("xbar"), 2);
  EXPECT_EQ(print_formula(s.phi), "(and (in x1 xbar) (in x2 xbar) (in x3 xbar))");
  EXPECT_FALSE(oracle_implies(s.phi, s.disjunction(), 3).implied);
}

TEST(Schema, FreshNamesAvoidCollisions) {
  auto s = nonconvexity_schema(parse_formula("(in x1 x2)"), Variable("xbar"), 3);
  ASSERT_EQ(s.elements.size(), 4u);
  EXPECT_EQ(s.elements[0].name, "x1'");
  EXPECT_EQ(s.elements[1].name, "x2'");
  EXPECT_EQ(s.elements[2].name, "x3");
  EXPECT_EQ(s.candidates.size(), 6u);
  EXPECT_THROW(nonconvexity_schema(Formula::truth(), Variable("xbar"), 1), PreconditionError);
}

}  // namespace
