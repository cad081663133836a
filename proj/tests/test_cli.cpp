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
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "cli.hpp"

namespace {

using setsyl::cli::Json;

struct Run {
  int code = -1;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  Run r;
  r.code = setsyl::cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string sample(const std::string& name) { return std::string(SETSYL_SOURCE_DIR) + "/samples/" + name; }

std::filesystem::path temp_file(const std::string& name, const std::string& text) {
  auto p = std::filesystem::temp_directory_path() / ("setsyl_test_" + name);
  std::ofstream(p) << text;
  return p;
}

TEST(Cli, SolveExample) {
  auto r = run({"solve", sample("example.syl")});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.substr(0, 4), "sat\n");
  EXPECT_NE(r.out.find("ybar = "), std::string::npos);
}

TEST(Cli, SolveJsonWithWitness) {
  auto r = run({"solve", sample("example.syl"), "--json", "--witness"});
  ASSERT_EQ(r.code, 0);
  auto j = Json::parse(r.out);
  EXPECT_EQ(j["status"], "sat");
  EXPECT_TRUE(j["propagated"].is_array());
  EXPECT_TRUE(j["witness"].contains("merge"));
  EXPECT_TRUE(j["witness"].contains("sigma"));
  EXPECT_TRUE(j["witness"].contains("junk"));
  EXPECT_TRUE(j["witness"].contains("topo"));
  EXPECT_EQ(j["model"]["x"], "{}");
}

TEST(Cli, SolveUnsat) {
  auto r = run({"solve", sample("cycle.syl")});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "unsat\n");
}

TEST(Cli, MixedSignatureEngagesCombiner) {
  auto r = run({"solve", sample("mls_lra.syl"), "--json"});
  ASSERT_EQ(r.code, 0);
  auto j = Json::parse(r.out);
  EXPECT_EQ(j["status"], "unsat");
  EXPECT_EQ(j["engine"], "combined");
  EXPECT_EQ(j["propagated"], Json::parse(R"([["x","y"]])"));
}

TEST(Cli, PluginRestriction) {
  auto r = run({"solve", sample("mls_lra.syl"), "--plugins", "mls"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("LRA"), std::string::npos);
}

TEST(Cli, MissingFile) { EXPECT_EQ(run({"solve", "missing.syl"}).code, 2); }

TEST(Cli, ParseErrorExit) {
  auto p = temp_file("bad.syl", "(assert (in x");
  auto r = run({"solve", p.string()});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("parse error at 1:"), std::string::npos);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"nonconvex-demo", "--theory", "mlsq"}).code, 2);
  EXPECT_EQ(run({"witness", sample("example_witness.syl")}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, ResourceLimitExit) {
  EXPECT_EQ(run({"oracle", sample("cycle.syl"), "--rank", "5"}).code, 3);
  EXPECT_EQ(run({"solve", sample("example.syl"), "--budget", "2"}).code, 3);
}

TEST(Cli, Normalize) {
  auto p = temp_file("subset.syl", "(assert (subset x y))");
  auto r = run({"normalize", p.string()});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "; disjunct 1\n(assert (= _g1 (setminus y x)))\n(assert (= x (setminus y _g1)))\n");
  auto j = Json::parse(run({"normalize", p.string(), "--json"}).out);
  EXPECT_EQ(j["disjuncts"][0]["nlits"], 2);
}

TEST(Cli, Oracle) {
  auto r = run({"oracle", sample("cycle.syl"), "--rank", "3"});
  EXPECT_EQ(r.out, "no-model-within-bound 3\n");
  auto j = Json::parse(run({"oracle", sample("mlsu.syl"), "--json"}).out);
  EXPECT_EQ(j["status"], "sat");
  EXPECT_EQ(j["model"]["xbar"], "{{},{{}}}");
}

TEST(Cli, WitnessWithGivenModels) {
  auto trace = std::filesystem::temp_directory_path() / "setsyl_test_trace.json";
  auto r = run({"witness", sample("example_witness.syl"), "--eq", "xbar=ybar", "--models",
                sample("example_models.json"), "--trace", trace.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("s = {{{{{}}}}}"), std::string::npos);
  EXPECT_NE(r.out.find("stabilized_at = 2"), std::string::npos);
  std::ifstream in(trace);
  auto j = Json::parse(in);
  EXPECT_EQ(j["V"][0], Json::parse(R"(["ybar","z"])"));
  EXPECT_TRUE(j["lemmas"]["pass"].get<bool>());
  EXPECT_TRUE(j["disequalities_preserved"].get<bool>());
}

TEST(Cli, WitnessFromSolver) {
  auto r = run({"witness", sample("example_witness.syl"), "--eq", "xbar=ybar", "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = Json::parse(r.out);
  EXPECT_TRUE(j["lemmas"]["pass"].get<bool>());
}

TEST(Cli, WitnessImplied) {
  auto p = temp_file("implied.syl", "(assert (= z (setminus z z)))\n(assert (= x (setminus y z)))\n");
  auto r = run({"witness", p.string(), "--eq", "x=y"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "implied x = y\n");
}

TEST(Cli, FuzzDeterministic) {
  std::vector<std::string> args{"fuzz-convexity", "--vars", "3", "--lits", "3", "--iters", "200", "--seed", "7"};
  auto a = run(args), b = run(args);
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out.find("violations 0"), std::string::npos);
}

TEST(Cli, NonconvexDemos) {
  for (const auto& t : setsyl::cli::demo_theories()) {
    auto r = run({"nonconvex-demo", "--theory", t});
    EXPECT_EQ(r.code, 0) << t;
    EXPECT_NE(r.out.find("result pass"), std::string::npos) << r.out;
  }
  auto r = run({"nonconvex-demo", "--theory", "mlsp"});
  EXPECT_NE(r.out.find("disjunction implied within bound: yes; each single equality refutable: yes (3/3)"),
            std::string::npos);
}

TEST(Cli, RepeatedRunsIdentical) {
  auto a = run({"solve", sample("subset.syl"), "--json", "--witness"});
  auto b = run({"solve", sample("subset.syl"), "--json", "--witness"});
  EXPECT_EQ(a.out, b.out);
}

}  // namespace
