// Copyright 2026 The convbench Authors
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

#pragma once

#include <string>
#include <vector>

#include "convbench/types.hpp"

namespace convbench {

// One line per violated Problem/TestSuite invariant. Messages start with a
// stable tag ("empty task_id", "empty suite", "duplicate case", ...).
// Ground-truth grading needs a sandbox and lives in the dataset loader.
std::vector<std::string> validate_problem(const Problem& problem);

}  // namespace convbench
