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
// Acceptance runner. One line per criterion; exit status 1 if any fails.

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "setsyl/setsyl.hpp"

#ifndef SETSYL_SOURCE_DIR
#define SETSYL_SOURCE_DIR "."
#endif

namespace {

using namespace setsyl;
using Clock = std::chrono::steady_clock;

// Pinned limits.
constexpr double kReplaySeconds = 1.0;
constexpr double kLemmaSeconds = 60.0;
constexpr double kFuzzSeconds = 600.0;
constexpr std::size_t kLemmaRuns = 1000;
constexpr std::size_t kFuzzIters = 10000;
constexpr std::size_t kMinimizeRuns = 500;
constexpr std::size_t kRankBound = 3;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string sample(const std::string& name) { return std::string(SETSYL_SOURCE_DIR) + "/samples/" + name; }

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt_seconds(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2fs", s);
  return buf;
}

// 1 -------------------------------------------------------------------------

Outcome example_replay() {
  const auto t0 = Clock::now();
  std::ostringstream out, err;
  int code = cli::run({"witness", sample("example_witness.syl"), "--eq", "xbar=ybar", "--models",
                       sample("example_models.json"), "--json"},
                      out, err);
  const double secs = seconds_since(t0);
  if (code != 0) return {false, "exit " + std::to_string(code) + ": " + err.str()};
  const auto j = cli::Json::parse(out.str());

  const HFSet e;
  const HFSet s1 = hf({e});
  const HFSet p2 = hf({e, s1});
  const HFSet s = nested_singleton(4);
  const HFSet e_s = hf({e, s});
  const HFSet m1z = hf({e, s1, s, e_s});
  const HFSet m1w = hf({e, s1, e_s});
  const HFSet m2v = hf({p2, hf({e, s1, s}), m1z, m1w});

  auto set_at = [&](const cli::Json& v) { return parse_braces(v.get<std::string>()); };
  std::vector<std::string> bad;
  auto expect = [&](bool ok, const std::string& what) {
    if (!ok) bad.push_back(what);
  };
  expect(set_at(j["s"]) == s, "s");
  expect(set_at(j["t"]) == e, "t");
  expect(j["direction"] == "ybar", "direction");
  expect(j["V"].size() == 4, "V length");
  if (j["V"].size() == 4) {
    expect(j["V"][0] == cli::Json::parse(R"(["ybar","z"])"), "V0");
    expect(j["V"][1] == cli::Json::parse(R"(["z","w","v"])"), "V1");
    expect(j["V"][2] == cli::Json::parse(R"(["v"])"), "V2");
    expect(j["V"][3].empty(), "V3");
  }
  if (j["M"].size() == 4) {
    expect(set_at(j["M"][1]["z"]) == m1z, "M1 z");
    expect(set_at(j["M"][1]["w"]) == m1w, "M1 w");
    expect(set_at(j["M"][2]["v"]) == m2v, "M2 v");
    expect(j["M"][2] == j["M"][3], "M2 = M3");
  } else {
    bad.push_back("M length");
  }
  expect(j["stabilized_at"] == 2, "stabilized_at");
  expect(j["lemmas"]["pass"].get<bool>(), "lemmas");
  expect(secs < kReplaySeconds, "runtime");

  std::string detail = fmt_seconds(secs);
  for (const auto& b : bad) detail += " mismatch:" + b;
  return {bad.empty(), detail};
}

// 2 -------------------------------------------------------------------------

Outcome lemma_suite() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(20240611);
  std::size_t runs = 0, failures = 0, attempts = 0;
  std::string first_failure;
  while (runs < kLemmaRuns && attempts < 200000) {
    ++attempts;
    const std::size_t nvars = 2 + rng() % 4;
    const std::size_t nlits = 1 + rng() % 5;
    auto nc = random_conjunction(rng, nvars, nlits);
    if (nc.vars().size() < 2) continue;
    auto pairs = all_pairs(nc.vars());
    const auto [a, b] = pairs[rng() % pairs.size()];
    const Formula phi = nc.to_formula();
    const Formula eq = equality(a, b);
    auto M = oracle_sat(Formula::conjunction({phi, eq}), kRankBound);
    if (!M.sat) continue;
    auto Mbar = oracle_sat(Formula::conjunction({phi, Formula::negation(eq)}), kRankBound);
    if (!Mbar.sat) continue;
    auto r = enlarge(nc, M.model, Mbar.model, a, b);
    auto rep = check_lemmas(r.trace, M.model, nc);
    const bool ok = rep.all_pass() && disequalities_preserved(nc.vars(), M.model, r.model) &&
                    satisfies(nc, r.model) && !(r.model.at(a) == r.model.at(b));
    if (!ok) {
      ++failures;
      if (first_failure.empty()) first_failure = " first failure:\n" + nc.print();
    }
    ++runs;
  }
  const double secs = seconds_since(t0);
  bool pass = runs == kLemmaRuns && failures == 0 && secs < kLemmaSeconds;
  return {pass, std::to_string(runs) + " runs, " + std::to_string(failures) + " failures, " + fmt_seconds(secs) +
                    first_failure};
}

// 3 -------------------------------------------------------------------------

Outcome convexity() {
  const auto t0 = Clock::now();
  FuzzConfig cfg;
  cfg.vars = 4;
  cfg.lits = 5;
  cfg.iters = kFuzzIters;
  cfg.seed = 1;
  cfg.rank_bound = kRankBound;
  auto rep = convexity_fuzz(cfg);
  const double secs = seconds_since(t0);
  return {rep.iterations == kFuzzIters && rep.violations == 0 && secs < kFuzzSeconds,
          std::to_string(rep.iterations) + " iterations, " + std::to_string(rep.disjunction_implied) +
              " with disjunction implied, " + std::to_string(rep.violations) + " violations, " + fmt_seconds(secs)};
}

// 4 -------------------------------------------------------------------------

const std::array<Variable, 3> kVars{Variable("x"), Variable("y"), Variable("z")};
constexpr std::array<std::array<int, 3>, 6> kPerms{
    {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};

// Normal literal i: 0..8 are memberships a∈b, 9..35 differences a = b ∖ c.
int rename_literal(int lit, const std::array<int, 3>& p) {
  if (lit < 9) return p[lit / 3] * 3 + p[lit % 3];
  int d = lit - 9;
  return 9 + p[d / 9] * 9 + p[(d / 3) % 3] * 3 + p[d % 3];
}

NormalizedConjunction build_normal(const std::vector<int>& lits) {
  NormalizedConjunction nc;
  for (int lit : lits) {
    if (lit < 9) {
      nc.add_membership(kVars[lit / 3], kVars[lit % 3]);
    } else {
      int d = lit - 9;
      nc.add_difference(kVars[d / 9], kVars[(d / 3) % 3], kVars[d % 3]);
    }
  }
  return nc;
}

// Visits every subset of {0..n-1} with 1..max_size elements.
void subsets(int n, std::size_t max_size, const std::function<void(const std::vector<int>&)>& visit) {
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int start) {
    if (!cur.empty()) visit(cur);
    if (cur.size() == max_size) return;
    for (int i = start; i < n; ++i) {
      cur.push_back(i);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
}

template <class Rename>
std::vector<int> canonical(const std::vector<int>& lits, Rename rename) {
  std::vector<int> best;
  for (const auto& p : kPerms) {
    std::vector<int> r;
    for (int l : lits) r.push_back(rename(l, p));
    std::sort(r.begin(), r.end());
    if (best.empty() || r < best) best = r;
  }
  return best;
}

Outcome solver_oracle() {
  const auto t0 = Clock::now();
  std::set<std::vector<int>> seen;
  std::size_t instances = 0, mismatches = 0, bad_models = 0, sats = 0;
  std::string first;
  subsets(36, 4, [&](const std::vector<int>& lits) {
    if (!seen.insert(canonical(lits, rename_literal)).second) return;
    ++instances;
    auto nc = build_normal(lits);
    auto s = solve(nc);
    auto o = oracle_sat(nc.to_formula(), kRankBound);
    if (s.sat != o.sat) {
      ++mismatches;
      if (first.empty()) first = " first mismatch:\n" + nc.print();
    }
    if (s.sat) {
      ++sats;
      if (!eval_formula(nc.to_formula(), s.model)) ++bad_models;
    }
  });
  return {mismatches == 0 && bad_models == 0,
          std::to_string(instances) + " instances (" + std::to_string(sats) + " sat), " +
              std::to_string(mismatches) + " disagreements, " + std::to_string(bad_models) + " bad models, " +
              fmt_seconds(seconds_since(t0)) + first};
}

// 5 -------------------------------------------------------------------------

Outcome demos() {
  std::string detail;
  bool pass = true;
  for (const auto& theory : cli::demo_theories()) {
    auto rep = cli::nonconvex_demo(theory, kRankBound);
    detail += theory + (rep.pass() ? "=pass " : "=FAIL ");
    pass = pass && rep.pass();
    if (theory == "mlsp") {
      bool has_exact = std::any_of(rep.checks.begin(), rep.checks.end(), [](const cli::DemoCheck& c) {
        return c.name.starts_with("every bounded model has xbar") && c.pass;
      });
      pass = pass && has_exact;
    }
  }
  return {pass, detail};
}

// 6 -------------------------------------------------------------------------

Outcome minimize_fixpoint() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(5150);
  std::size_t runs = 0, mismatches = 0, attempts = 0;
  while (runs < kMinimizeRuns && attempts < 100000) {
    ++attempts;
    auto nc = random_conjunction(rng, 2 + rng() % 3, 1 + rng() % 4);
    if (nc.vars().size() < 2) continue;
    auto E = all_pairs(nc.vars());
    auto r = minimize_equalities(nc, E);
    if (!r.sat) continue;
    ++runs;
    bool ok = r.classification.implied() == implied_equalities(nc, E) && r.enlargements <= E.size() &&
              satisfies(nc, r.model.restricted_to(nc.vars()));
    for (const auto& st : r.classification.equalities)
      if (!st.implied && r.model.at(st.pair.first) == r.model.at(st.pair.second)) ok = false;
    if (!ok) ++mismatches;
  }
  return {runs == kMinimizeRuns && mismatches == 0,
          std::to_string(runs) + " instances, " + std::to_string(mismatches) + " mismatches, " +
              fmt_seconds(seconds_since(t0))};
}

// 7 -------------------------------------------------------------------------

Outcome combination() {
  struct Case {
    const char* file;
    bool sat;
  };
  const Case cases[] = {{"mls_lra.syl", false}, {"list_lra.syl", false}, {"disjoint.syl", true}};
  std::size_t runs = 0, bad = 0;
  std::string detail;
  for (const auto& c : cases) {
    std::ifstream in(sample(c.file));
    std::stringstream buf;
    buf << in.rdbuf();
    const Script script = parse_script(buf.str());
    std::vector<std::string> order{"list", "lra", "mls"};
    do {
      CombineOptions opt;
      opt.plugins = order;
      auto r = solve_combined(script, opt);
      const std::size_t k = r.problem.shared.size();
      ++runs;
      if (r.sat != c.sat || r.rounds > k * (k - 1) / 2) {
        ++bad;
        detail += std::string(" ") + c.file + " order";
        for (const auto& p : order) detail += " " + p;
      }
    } while (std::next_permutation(order.begin(), order.end()));
  }
  return {bad == 0, std::to_string(runs) + " runs, " + std::to_string(bad) + " wrong" + detail};
}

// 8 -------------------------------------------------------------------------

enum class Shape { Empty, In, Eq, Subset, Union, Inter, Setminus };

struct AtomSpec {
  Shape shape;
  int a = 0, b = 0, c = 0;
  auto operator<=>(const AtomSpec&) const = default;
};

Atom make_atom(const AtomSpec& s) {
  auto v = [](int i) { return Term::var(kVars[i]); };
  switch (s.shape) {
    case Shape::Empty: return Atom::eq(v(s.a), Term::empty());
    case Shape::In: return Atom::in(v(s.a), v(s.b));
    case Shape::Eq: return Atom::eq(v(s.a), v(s.b));
    case Shape::Subset: return Atom::subset(v(s.a), v(s.b));
    case Shape::Union: return Atom::eq(v(s.a), Term::apply(Op::Union, v(s.b), v(s.c)));
    case Shape::Inter: return Atom::eq(v(s.a), Term::apply(Op::Inter, v(s.b), v(s.c)));
    case Shape::Setminus: return Atom::eq(v(s.a), Term::apply(Op::Setminus, v(s.b), v(s.c)));
  }
  throw InvariantViolation("unknown atom shape");
}

std::vector<AtomSpec> atom_suite() {
  std::vector<AtomSpec> out;
  for (int a = 0; a < 3; ++a) {
    out.push_back({Shape::Empty, a});
    for (int b = 0; b < 3; ++b) {
      for (Shape s : {Shape::In, Shape::Eq, Shape::Subset}) out.push_back({s, a, b});
      for (int c = 0; c < 3; ++c)
        for (Shape s : {Shape::Union, Shape::Inter, Shape::Setminus}) out.push_back({s, a, b, c});
    }
  }
  return out;
}

Outcome equisatisfiability() {
  const auto t0 = Clock::now();
  const auto specs = atom_suite();
  std::map<AtomSpec, int> index;
  for (std::size_t i = 0; i < specs.size(); ++i) index[specs[i]] = static_cast<int>(i);
  // Literal l is atom l / 2, negated when odd.
  auto rename = [&](int l, const std::array<int, 3>& p) {
    AtomSpec s = specs[l / 2];
    const int arity = s.shape == Shape::Empty ? 1 : s.shape <= Shape::Subset ? 2 : 3;
    s.a = p[s.a];
    if (arity > 1) s.b = p[s.b];
    if (arity > 2) s.c = p[s.c];
    return index.at(s) * 2 + l % 2;
  };
  auto literal = [&](int l) { return Literal{make_atom(specs[l / 2]), l % 2 == 0}; };

  OracleOptions opt;
  opt.rank_bound = kRankBound;
  opt.fresh_slack = 1;
  std::set<std::vector<int>> seen;
  std::size_t instances = 0, mismatches = 0;
  std::string first;
  subsets(static_cast<int>(specs.size() * 2), 2, [&](const std::vector<int>& lits) {
    if (!seen.insert(canonical(lits, rename)).second) return;
    ++instances;
    LiteralConjunction conj;
    for (int l : lits) conj.push_back(literal(l));
    const bool original = oracle_sat(Formula::conjunction_of(conj), kRankBound).sat;
    bool normalized = false;
    for (const auto& nc : normalize_formula(Formula::conjunction_of(conj))) {
      if (oracle_sat(nc.to_formula(), opt).sat) {
        normalized = true;
        break;
      }
    }
    if (original != normalized) {
      ++mismatches;
      if (first.empty()) first = " first mismatch: " + print_formula(Formula::conjunction_of(conj));
    }
  });
  return {mismatches == 0, std::to_string(instances) + " instances, " + std::to_string(mismatches) +
                               " verdict changes, " + fmt_seconds(seconds_since(t0)) + first};
}

}  // namespace

int main(int argc, char** argv) {
  struct Criterion {
    int id;
    const char* name;
    Outcome (*run)();
  };
  const Criterion all[] = {
      {1, "worked example replay", example_replay},
      {2, "enlargement lemma suite", lemma_suite},
      {3, "convexity fuzz", convexity},
      {4, "solver and oracle agree", solver_oracle},
      {5, "non-convexity demos", demos},
      {6, "minimization fixpoint", minimize_fixpoint},
      {7, "combination suite", combination},
      {8, "normalizer equisatisfiability", equisatisfiability},
  };
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));
  int failed = 0;
  for (const auto& c : all) {
    if (!only.empty() && !only.count(c.id)) continue;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << c.id << " (" << c.name << "): " << o.detail
              << std::endl;
    if (!o.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
