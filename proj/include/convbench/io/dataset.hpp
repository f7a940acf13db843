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

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "convbench/io/codec.hpp"
#include "convbench/sandbox/sandbox.hpp"
#include "convbench/types.hpp"

namespace convbench {

// Test method names in definition order: every `def test...(self` in the
// harness source.
std::vector<std::string> discover_case_names(std::string_view test_code);

// One BigCodeBench-shaped record: task_id, instruct_prompt, canonical_solution
// (prefixed with code_prompt when present), test, entry_point and an
// optional explicit case_names list. Throws ValidationError.
Problem problem_from_record(const Json& record);

struct DatasetReject {
  std::size_t line = 0;
  std::string task_id;  // empty when the record had none
  std::string reason;
};

struct Dataset {
  std::filesystem::path path;
  std::string sha256;
  std::vector<Problem> problems;
  std::vector<DatasetReject> rejects;
};

// Malformed JSON aborts with ParseError; invalid records are rejected and
// reported while the rest load. With an oracle sandbox, a record whose ground
// truth fails its own suite is rejected as an "oracle failure".
Dataset load_dataset(const std::filesystem::path& path, const sandbox::Sandbox* oracle = nullptr,
                     const sandbox::RunLimits& limits = {});

}  // namespace convbench
