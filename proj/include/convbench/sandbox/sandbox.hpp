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

#include <cstddef>
#include <string_view>

#include "convbench/types.hpp"

namespace convbench::sandbox {

struct RunLimits {
  double timeout_s = 10.0;             // per case
  std::size_t traceback_limit = 2000;  // characters of detail kept per case

  bool valid() const noexcept { return timeout_s > 0.0 && traceback_limit > 0; }
};

// Where candidate code gets parsed and tested. Implementations are safe to
// call concurrently.
class Sandbox {
 public:
  virtual ~Sandbox() = default;

  virtual CompilationFeedback syntax_check(std::string_view code) const = 0;

  // One result per selected case, in suite order. Failing code is data, not
  // an error; only infrastructure failures throw (RunnerUnavailable).
  virtual ExecutionFeedback run_tests(std::string_view code, const TestSuite& suite,
                                      Coverage coverage, const RunLimits& limits) const = 0;

  // True iff every case of the full suite passes.
  bool grade(std::string_view code, const TestSuite& suite, const RunLimits& limits) const {
    return run_tests(code, suite, Coverage::kFull, limits).all_passed();
  }
};

// Truncates to at most `limit` bytes without splitting a UTF-8 sequence.
std::string truncate_detail(std::string_view detail, std::size_t limit);

}  // namespace convbench::sandbox
