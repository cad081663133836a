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
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "setsyl/hf_universe.hpp"
#include "setsyl/parser.hpp"

namespace {

using namespace setsyl;

const HFSet E;
const HFSet S1 = hf({E});         // {∅}
const HFSet S2 = hf({S1});        // {{∅}}
const HFSet P2 = hf({E, S1});     // {∅,{∅}}

TEST(HF, Canonical) {
  EXPECT_TRUE(hf({}).empty());
  EXPECT_EQ(hf({}).rank(), 0u);
  EXPECT_EQ(hf({E, E}), S1);
  EXPECT_EQ(hf({E, E}).size(), 1u);
  EXPECT_EQ(hf({S1, E}), hf({E, S1}));
  EXPECT_EQ(hf({S1, E}).rank(), 2u);
}

TEST(HF, CanonicalUnderPermutation) {
  std::mt19937 rng(5);
  const std::vector<HFSet> base{E, S1, S2, P2, hf({P2}), hf({S2, E})};
  const HFSet ref = hf(base);
  for (int i = 0; i < 200; ++i) {
    auto kids = base;
    std::shuffle(kids.begin(), kids.end(), rng);
    kids.push_back(kids[i % kids.size()]);
    ASSERT_EQ(hf(kids), ref);
    const HFSet once = hf(kids);
    ASSERT_EQ(hf(std::vector<HFSet>(once.members().begin(), once.members().end())), ref);
  }
}

TEST(HF, NestedSingleton) {
  EXPECT_EQ(nested_singleton(0), E);
  EXPECT_EQ(nested_singleton(2), S2);
  EXPECT_EQ(nested_singleton(4), hf({hf({hf({hf({E})})})}));
  EXPECT_EQ(nested_singleton(4).rank(), 4u);
  for (std::size_t d = 0; d <= 6; ++d) EXPECT_EQ(nested_singleton(d).rank(), d);
}

TEST(HF, Braces) {
  EXPECT_EQ(to_braces(P2), "{{},{{}}}");
  EXPECT_EQ(parse_braces("{ {}, {{}} }"), P2);
  EXPECT_EQ(parse_braces(to_braces(hf({P2, S2, E}))), hf({P2, S2, E}));
}

TEST(HF, AckermannCode) {
  EXPECT_EQ(E.code(), 0u);
  EXPECT_EQ(S1.code(), 1u);
  EXPECT_EQ(P2.code(), 3u);
  EXPECT_EQ(HFSet::from_code(11), hf({E, S1, P2}));  // 11 = 2^0 + 2^1 + 2^3
  for (std::uint32_t c = 0; c < 300; ++c) EXPECT_EQ(HFSet::from_code(c).code(), c);
}

TEST(Universe, Sizes) {
  const std::uint32_t expected[] = {1, 2, 4, 16, 65536};
  for (std::size_t r = 0; r <= 4; ++r) EXPECT_EQ(universe_size(r), expected[r]);
  EXPECT_THROW(universe_size(5), BoundTooLargeError);
  EXPECT_THROW(enumerate_universe(5), BoundTooLargeError);
}

TEST(Universe, SmallBoundsByHand) {
  EXPECT_EQ(enumerate_universe(0), std::vector<HFSet>{E});
  EXPECT_EQ(enumerate_universe(2), (std::vector<HFSet>{E, S1, S2, P2}));
  auto u3 = enumerate_universe(3);
  EXPECT_EQ(u3.size(), 16u);
  EXPECT_TRUE(std::is_sorted(u3.begin(), u3.end()));
}

TEST(Universe, PowerSetGrowth) {
  for (std::size_t r = 1; r <= 3; ++r) {
    auto lower = enumerate_universe(r - 1);
    auto cur = enumerate_universe(r);
    EXPECT_EQ(cur.size(), std::size_t{1} << lower.size());
    for (const auto& s : cur) {
      EXPECT_LE(s.rank(), r);
      for (const auto& m : s.members()) EXPECT_TRUE(std::binary_search(lower.begin(), lower.end(), m));
    }
  }
}

SetAssignment assign(std::initializer_list<std::pair<const char*, HFSet>> kv) {
  SetAssignment m;
  for (const auto& [k, s] : kv) m.set(k, s);
  return m;
}

TEST(Eval, Membership) {
  auto m = assign({{"x", E}, {"y", S1}});
  EXPECT_TRUE(eval_formula(parse_formula("(in x y)"), m));
  EXPECT_FALSE(eval_formula(parse_formula("(in y x)"), m));
  EXPECT_EQ(m.rank(), 1u);
}

TEST(Eval, PowerSet) {
  auto f = parse_formula("(= xbar (pow y))");
  EXPECT_TRUE(eval_formula(f, assign({{"y", S1}, {"xbar", P2}})));
  for (const auto& s : enumerate_universe(3))
    if (!(s == P2)) EXPECT_FALSE(eval_formula(f, assign({{"y", S1}, {"xbar", s}})));
}

TEST(Eval, KuratowskiCross) {
  // (∅,∅) = {{∅},{∅,∅}} = {{∅}}, so {∅} × {∅} = {{{∅}}}.
  const HFSet pair00 = hf({hf({E}), hf({E, E})});
  const HFSet expected = hf({pair00});
  EXPECT_EQ(expected, hf({S2}));
  auto f = parse_formula("(= e (cross x y))");
  std::size_t hits = 0;
  for (const auto& s : enumerate_universe(3)) {
    bool ok = eval_formula(f, assign({{"e", s}, {"x", S1}, {"y", S1}}));
    EXPECT_EQ(ok, s == expected);
    hits += ok;
  }
  EXPECT_EQ(hits, 1u);
}

TEST(Eval, UnorderedCross) {
  // {∅,{∅}} ⊗ {∅} = {{∅}, {∅,{∅}}}
  auto f = parse_formula("(= e (ucross x y))");
  EXPECT_TRUE(eval_formula(f, assign({{"e", hf({S1, P2})}, {"x", P2}, {"y", S1}})));
}

TEST(Eval, BigUnionAndIntersection) {
  EXPECT_TRUE(eval_formula(parse_formula("(= (bigU y) x)"), assign({{"x", E}, {"y", S1}})));
  EXPECT_TRUE(eval_formula(parse_formula("(= x (bigI y))"), assign({{"x", E}, {"y", hf({S1, S2})}})));
  EXPECT_TRUE(eval_formula(parse_formula("(= x (bigI y))"), assign({{"x", S1}, {"y", hf({S1, P2})}})));
  // ⋂∅ is undefined: the defining atom is false for every candidate.
  for (const auto& s : enumerate_universe(2))
    EXPECT_FALSE(eval_formula(parse_formula("(= x (bigI y))"), assign({{"x", s}, {"y", E}})));
}

TEST(Eval, ExampleModels) {
  auto phi = parse_formula(
      "(and (= x (setminus ybar z)) (= x (setminus xbar w)) (not (= x ybar))"
      " (in ybar w) (in w v) (in z v))");
  auto M = assign({{"x", E}, {"xbar", S1}, {"ybar", S1}, {"z", P2}, {"w", P2}, {"v", hf({P2})}});
  auto Mbar = assign({{"x", E}, {"ybar", S1}, {"z", S1}, {"xbar", S2}, {"w", S2}, {"v", hf({S1, S2})}});
  EXPECT_TRUE(eval_formula(phi, M));
  EXPECT_TRUE(eval_formula(parse_formula("(= xbar ybar)"), M));
  EXPECT_TRUE(eval_formula(phi, Mbar));
  EXPECT_FALSE(eval_formula(parse_formula("(= xbar ybar)"), Mbar));
  EXPECT_EQ(M.rank(), 3u);
}

TEST(Eval, Unbound) {
  EXPECT_THROW(eval_formula(parse_formula("(in x y)"), assign({{"x", E}})), UnboundVariableError);
}

TEST(Eval, RejectsNonSetAtoms) {
  EXPECT_THROW(eval_formula(parse_formula("(<= x y)"), assign({{"x", E}, {"y", E}})), UnsupportedAtomError);
}

TEST(Assignment, RestrictAndRank) {
  auto m = assign({{"a", E}, {"b", P2}, {"c", S2}});
  auto r = m.restricted_to({Variable("a"), Variable("c")});
  EXPECT_EQ(r.size(), 2u);
  EXPECT_EQ(r.rank(), 2u);
  EXPECT_EQ(SetAssignment().rank(), 0u);
}

}  // namespace
