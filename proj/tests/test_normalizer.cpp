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
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "setsyl/normalizer.hpp"
#include "setsyl/oracle.hpp"
#include "setsyl/parser.hpp"

namespace {

using namespace setsyl;

LiteralConjunction lits(const std::string& text) {
  auto d = dnf_split(parse_formula(text));
  EXPECT_EQ(d.size(), 1u);
  return d.front();
}

std::string printed(const NormalizedConjunction& nc) { return nc.print(); }

bool only_normal_literals(const NormalizedConjunction& nc) {
  for (const auto& l : nc.literals()) {
    if (!l.positive || !l.atom.lhs().is_var()) return false;
    if (l.atom.pred == Pred::In) {
      if (!l.atom.rhs().is_var()) return false;
    } else if (l.atom.pred == Pred::Eq) {
      const Term& r = l.atom.rhs();
      if (r.op() != Op::Setminus || !r.arg(0).is_var() || !r.arg(1).is_var()) return false;
    } else {
      return false;
    }
  }
  return true;
}

TEST(Dnf, Disjunction) {
  auto d = dnf_split(parse_formula("(or (in x y) (in x z))"));
  ASSERT_EQ(d.size(), 2u);
  EXPECT_EQ(d[0].size(), 1u);
  EXPECT_EQ(d[1].size(), 1u);
}

TEST(Dnf, DeMorgan) {
  auto d = dnf_split(parse_formula("(not (and (in x y) (in x z)))"));
  ASSERT_EQ(d.size(), 2u);
  EXPECT_EQ(print_literal(d[0][0]), "(not (in x y))");
  EXPECT_EQ(print_literal(d[1][0]), "(not (in x z))");
}

TEST(Dnf, NoSemanticPruning) {
  auto d = dnf_split(parse_formula("(and (in x y) (not (in x y)))"));
  ASSERT_EQ(d.size(), 1u);
  EXPECT_EQ(d[0].size(), 2u);
}

TEST(Dnf, Distribution) {
  auto d = dnf_split(parse_formula("(and (or (in a b) (in b c)) (or (in c d) (not (or (in d e) (in e a)))))"));
  ASSERT_EQ(d.size(), 4u);
  EXPECT_EQ(d[3].size(), 3u);
}

TEST(Dnf, RejectsOtherTheories) {
  EXPECT_THROW(dnf_split(parse_formula("(<= x y)")), UnsupportedAtomError);
  EXPECT_THROW(dnf_split(parse_formula("(= x (car y))")), UnsupportedAtomError);
  EXPECT_THROW(dnf_split(parse_formula("(= x (pow y))")), UnsupportedAtomError);
}

TEST(Normalize, EmptyBecomesSelfDifference) {
  EXPECT_EQ(printed(normalize(lits("(= x empty)"))), "(assert (= x (setminus x x)))\n");
}

TEST(Normalize, NormalFormIsFixed) {
  auto in = lits("(and (in x y) (= x (setminus y z)))");
  auto nc = normalize(in);
  EXPECT_EQ(nc.literals(), in);
  EXPECT_EQ(normalize(nc.literals()), nc);
}

TEST(Normalize, SubsetByRulesSevenAndFive) {
  auto nc = normalize(lits("(subset x y)"));
  EXPECT_EQ(printed(nc), "(assert (= _g1 (setminus y x)))\n(assert (= x (setminus y _g1)))\n");
  // Equisatisfiable with x ⊆ y: every model of the output restricted to x, y
  // satisfies x ⊆ y, and x ⊆ y at rank 2 extends by _g1 = y ∖ x.
  auto original = parse_formula("(subset x y)");
  OracleOptions opt;
  opt.rank_bound = 2;
  EXPECT_TRUE(oracle_implies(nc.to_formula(), original, opt).implied);
  EXPECT_TRUE(oracle_implies(original, parse_formula("(= x (setminus y (setminus y x)))"), opt).implied);
}

TEST(Normalize, EveryRuleYieldsNormalLiterals) {
  const char* inputs[] = {"(= x empty)",          "(not (= x empty))",       "(not (in x y))",
                          "(= x y)",              "(= x (inter y z))",       "(= x (union y z))",
                          "(subset x y)",         "(not (= x y))",           "(not (= x (union y z)))",
                          "(not (= x (inter y z)))", "(not (= x (setminus y z)))", "(not (subset x y))",
                          "(in (union x y) (setminus z (inter x y)))"};
  for (const char* in : inputs) {
    auto nc = normalize(lits(in));
    EXPECT_TRUE(only_normal_literals(nc)) << in;
    OracleOptions opt;
    opt.rank_bound = 2;
    opt.fresh_slack = 2;
    EXPECT_EQ(oracle_sat(parse_formula(in), opt).sat, oracle_sat(nc.to_formula(), opt).sat) << in;
  }
}

TEST(Normalize, FreshNamesSkipExisting) {
  auto nc = normalize(lits("(and (= _g1 empty) (subset x _g1))"));
  EXPECT_EQ(nc.differences()[1].x.name, "_g2");
}

TEST(Normalize, NegatedMembershipByRuleThree) {
  EXPECT_EQ(printed(normalize(lits("(not (in x y))"))),
            "(assert (in x _g1))\n(assert (= _g1 (setminus _g1 y)))\n");
}

TEST(Normalize, RejectsExtensions) {
  LiteralConjunction ext{Literal{parse_formula("(= x (pow y))").as_atom(), true}};
  EXPECT_THROW(normalize(ext), UnsupportedAtomError);
}

TEST(Size, Basics) {
  EXPECT_EQ(normalized_size(NormalizedConjunction{}).nvars, 0u);
  EXPECT_EQ(normalized_size(NormalizedConjunction{}).nlits, 0u);
  auto s = normalized_size(normalize(lits("(in x y)")));
  EXPECT_EQ(s.nvars, 2u);
  EXPECT_EQ(s.nlits, 1u);
}

TEST(Size, ExampleWithDisequality) {
  // Five normal literals, plus x ≠ ybar by rule (8):
  //   w = x ∪ ybar  -> rule (6): 4 literals, 2 fresh
  //   z = x ∩ ybar  -> rule (5): 2 literals, 1 fresh
  //   v ∈ w         -> 1 literal
  //   v ∉ z         -> rule (3): 2 literals, 1 fresh
  // w, z, v themselves are 3 more fresh variables: 6 + 7 variables, 5 + 9 literals.
  auto f = parse_formula(
      "(and (= x (setminus ybar z)) (= x (setminus xbar w)) (not (= x ybar))"
      " (in ybar w) (in w v) (in z v))");
  auto ncs = normalize_formula(f);
  ASSERT_EQ(ncs.size(), 1u);
  auto s = normalized_size(ncs[0]);
  EXPECT_EQ(s.nvars, 13u);
  EXPECT_EQ(s.nlits, 14u);
}

TEST(Size, GrowthIsLinear) {
  const char* inputs[] = {"(not (= x (union y z)))", "(and (not (= a b)) (subset b c) (= c empty))",
                          "(not (subset x y))"};
  for (const char* in : inputs) {
    auto l = lits(in);
    auto before = free_vars(parse_formula(in)).size();
    auto s = normalized_size(normalize(l));
    EXPECT_LE(s.nvars, before + 10 * l.size()) << in;
  }
}

}  // namespace
