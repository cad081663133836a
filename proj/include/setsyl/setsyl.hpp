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
/// Convenience header pulling in the whole library.

#pragma once

#include "setsyl/combiner.hpp"
#include "setsyl/convexity.hpp"
#include "setsyl/error.hpp"
#include "setsyl/formula.hpp"
#include "setsyl/hf_set.hpp"
#include "setsyl/hf_universe.hpp"
#include "setsyl/list.hpp"
#include "setsyl/lra.hpp"
#include "setsyl/mls_solver.hpp"
#include "setsyl/normalizer.hpp"
#include "setsyl/oracle.hpp"
#include "setsyl/parser.hpp"
