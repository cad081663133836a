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
/// The setsyl command line: subcommand dispatch, JSON output, and the
/// non-convexity demonstrations.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "setsyl/convexity.hpp"
#include "setsyl/hf_universe.hpp"
#include "setsyl/mls_solver.hpp"

namespace setsyl::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitResource = 3;
inline constexpr int kExitInternal = 4;

using Json = nlohmann::ordered_json;

Json model_json(const SetAssignment& m);
SetAssignment model_from_json(const Json& j);
Json witness_json(const NormalizedConjunction& nc, const SolverWitness& w);
Json trace_json(const EnlargementTrace& tr, const SetAssignment& model, const LemmaReport& lemmas);

struct DemoCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct DemoReport {
  std::string theory;
  std::string phi;
  std::vector<DemoCheck> checks;

  bool pass() const;
};

/// Theories accepted by nonconvex_demo.
const std::vector<std::string>& demo_theories();

/// Runs the bounded non-convexity argument for one set-theory extension.
/// Throws PreconditionError on an unknown theory name.
DemoReport nonconvex_demo(const std::string& theory, std::size_t rank_bound = 3);

/// Entry point shared by the executable and the tests.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace setsyl::cli
