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

#include <optional>
#include <string>

#include "convbench/types.hpp"

namespace convbench::feedback {

// "Compilation Feedback:\n<message>"
std::string format_compilation_block(const CompilationFeedback& fc);

// "Execution Feedback:\n" followed by one section per result, blank-line
// separated. Failing cases are headed by the upper-cased case name
// ("TEST_CASE_1"); other statuses add a marker such as "(passed)".
// Empty when there are no results.
std::string format_execution_block(const ExecutionFeedback& fe);

// Compilation block, then the execution block when it is non-empty.
std::string format_feedback_block(const CompilationFeedback& fc,
                                  const std::optional<ExecutionFeedback>& fe);

}  // namespace convbench::feedback
