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
#include <random>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "setsyl/formula.hpp"
#include "setsyl/parser.hpp"

namespace {

using namespace setsyl;

Term v(const char* n) { return Term::var(n); }

TEST(Parse, SingleMembership) {
  auto s = parse_script("(assert (in x y))");
  ASSERT_EQ(s.asserts.size(), 1u);
  EXPECT_EQ(s.asserts[0], Formula::atom(Atom::in(v("x"), v("y"))));
}

TEST(Parse, Difference) {
  auto s = parse_script("(assert (= x (setminus y z)))");
  ASSERT_EQ(s.asserts.size(), 1u);
  EXPECT_EQ(s.asserts[0], Formula::atom(Atom::eq(v("x"), Term::apply(Op::Setminus, v("y"), v("z")))));
}

TEST(Parse, UnbalancedReportsEndOfInput) {
  try {
    parse_script("(assert (in x");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 1u);
    EXPECT_EQ(e.column(), 14u);
    EXPECT_FALSE(e.expected().empty());
  }
}

TEST(Parse, ErrorPositionOnLaterLine) {
  try {
    parse_script("(assert (in x y))\n(assert (frob x y))");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(Parse, WrongArity) {
  EXPECT_THROW(parse_script("(assert (in x (single y z)))"), ArityError);
  EXPECT_THROW(parse_script("(assert (= x (car y z)))"), ArityError);
}

TEST(Parse, ImpliesIsSugar) {
  auto f = parse_formula("(=> (in x y) (in y z))");
  EXPECT_EQ(f.kind(), FormulaKind::Or);
  EXPECT_EQ(f.child(0).kind(), FormulaKind::Not);
}

TEST(Parse, OptionsAndRationals) {
  auto s = parse_script("(set-option :rank 2)\n(assert (<= (+ x 3/4) (- y)))");
  ASSERT_NE(s.option("rank"), nullptr);
  EXPECT_EQ(*s.option("rank"), "2");
  const Atom& a = s.asserts[0].as_atom();
  EXPECT_EQ(a.pred, Pred::Leq);
  EXPECT_EQ(a.lhs().arg(1).value(), Rational(3, 4));
  EXPECT_EQ(a.rhs().op(), Op::Neg);
}

TEST(Parse, PrimedIdentifiers) {
  auto f = parse_formula("(= x' (single y'))");
  EXPECT_EQ(f.as_atom().lhs().variable().name, "x'");
}

TEST(Print, Canonical) {
  EXPECT_EQ(print_formula(Formula::atom(Atom::in(v("x"), v("y")))), "(in x y)");
  EXPECT_EQ(print_formula(Formula::negation(Formula::atom(Atom::eq(v("x"), v("y"))))), "(not (= x y))");
  EXPECT_EQ(print_formula(Formula::atom(Atom::eq(v("x"), Term::apply(Op::Union, v("y"), v("z"))))),
            "(= x (union y z))");
}

TEST(FreeVars, FirstOccurrenceOrder) {
  auto names = [](const Formula& f) {
    std::vector<std::string> out;
    for (const auto& x : free_vars(f)) out.push_back(x.name);
    return out;
  };
  EXPECT_EQ(names(parse_formula("(in x y)")), (std::vector<std::string>{"x", "y"}));
  EXPECT_EQ(names(parse_formula("(and (= x (setminus y z)) (in x y))")),
            (std::vector<std::string>{"x", "y", "z"}));
  EXPECT_EQ(names(parse_formula("(= x x)")), (std::vector<std::string>{"x"}));
}

TEST(Classify, Theories) {
  EXPECT_EQ(classify_atom(Atom::in(v("x"), v("y"))), Theory::MLS);
  EXPECT_EQ(classify_atom(Atom::eq(v("x"), v("y"))), Theory::SHARED);
  EXPECT_EQ(classify_atom(parse_formula("(<= (+ x 1) y)").as_atom()), Theory::LRA);
  EXPECT_EQ(classify_atom(parse_formula("(= x (pow y))").as_atom()), Theory::MLS_EXT);
  EXPECT_EQ(classify_atom(parse_formula("(= x (cdr y))").as_atom()), Theory::LIST);
  EXPECT_EQ(classify_atom(parse_formula("(atom x)").as_atom()), Theory::LIST);
}

TEST(Classify, MixedAtom) {
  EXPECT_THROW(classify_atom(parse_formula("(= x (car (union y z)))").as_atom()), MixedAtomError);
}

// Random ASTs of depth <= 6 survive print/parse unchanged.
class RoundTrip {
 public:
  explicit RoundTrip(std::uint64_t seed) : rng_(seed) {}

  Term term(int depth) {
    std::uniform_int_distribution<int> pick(0, depth <= 0 ? 2 : 7);
    switch (pick(rng_)) {
      case 0: return Term::var(std::string(1, static_cast<char>('a' + pick_small(5))));
      case 1: return Term::empty();
      case 2: return Term::constant(Rational(static_cast<int>(pick_small(9)) - 4, 1 + pick_small(3)));
      case 3: return Term::apply(set_op(), term(depth - 1), term(depth - 1));
      case 4: return Term::apply(unary_ext(), term(depth - 1));
      case 5: return Term::apply(Op::Plus, term(depth - 1), term(depth - 1));
      case 6: return Term::apply(Op::Cons, term(depth - 1), term(depth - 1));
      default: return Term::apply(pick_small(2) ? Op::Car : Op::Neg, term(depth - 1));
    }
  }

  Formula formula(int depth) {
    std::uniform_int_distribution<int> pick(0, depth <= 0 ? 0 : 3);
    switch (pick(rng_)) {
      case 0: {
        static const Pred preds[] = {Pred::In, Pred::Eq, Pred::Subset, Pred::Leq, Pred::IsAtom};
        Pred p = preds[pick_small(5)];
        if (p == Pred::IsAtom) return Formula::atom(Atom::is_atom(term(depth - 1)));
        return Formula::atom(Atom::make(p, {term(depth - 1), term(depth - 1)}));
      }
      case 1: return Formula::negation(formula(depth - 1));
      default: {
        std::vector<Formula> kids;
        for (std::size_t i = 0, n = 1 + pick_small(3); i < n; ++i) kids.push_back(formula(depth - 1));
        return pick_small(2) ? Formula::conjunction(kids) : Formula::disjunction(kids);
      }
    }
  }

 private:
  std::size_t pick_small(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }
  Op set_op() {
    static const Op ops[] = {Op::Union, Op::Inter, Op::Setminus, Op::Cross, Op::UCross};
    return ops[pick_small(5)];
  }
  Op unary_ext() {
    static const Op ops[] = {Op::Single, Op::Pow, Op::BigUnion, Op::BigInter, Op::Cdr};
    return ops[pick_small(5)];
  }
  std::mt19937_64 rng_;
};

TEST(Property, PrintParseRoundTrip) {
  RoundTrip gen(20260101);
  for (int i = 0; i < 2000; ++i) {
    Formula f = gen.formula(6);
    std::string text = print_formula(f);
    Formula g = parse_formula(text);
    ASSERT_EQ(f, g) << text;
    ASSERT_EQ(print_formula(g), text);
    ASSERT_EQ(free_vars(f), free_vars(g));
  }
}

TEST(Property, ScriptRoundTrip) {
  RoundTrip gen(7);
  Script s;
  for (int i = 0; i < 20; ++i) s.asserts.push_back(gen.formula(4));
  Script t = parse_script(print_script(s));
  EXPECT_EQ(s.asserts, t.asserts);
}

}  // namespace
