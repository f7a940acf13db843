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

#include "convbench/feedback/format.hpp"

#include <algorithm>
#include <cctype>

namespace convbench::feedback {

namespace {

std::string upper(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  return s;
}

std::string format_case(const CaseResult& r) {
  const std::string name = upper(r.case_name);
  switch (r.status) {
    case CaseStatus::kPass:
      return name + " (passed)";
    case CaseStatus::kFail:
      return name + "\n" + r.detail;
    case CaseStatus::kError:
      return name + " (error)\n" + r.detail;
    case CaseStatus::kTimeout:
      return name + " (timeout)\n" + (r.detail.empty() ? std::string("Timed out") : r.detail);
  }
  return name;
}

}  // namespace

std::string format_compilation_block(const CompilationFeedback& fc) {
  return "Compilation Feedback:\n" + fc.message;
}

std::string format_execution_block(const ExecutionFeedback& fe) {
  if (fe.results.empty()) return {};
  std::string out = "Execution Feedback:\n";
  for (std::size_t i = 0; i < fe.results.size(); ++i) {
    if (i > 0) out += "\n\n";
    out += format_case(fe.results[i]);
  }
  return out;
}

std::string format_feedback_block(const CompilationFeedback& fc,
                                  const std::optional<ExecutionFeedback>& fe) {
  std::string out = format_compilation_block(fc);
  if (fe) {
    const auto exec = format_execution_block(*fe);
    if (!exec.empty()) out += "\n\n" + exec;
  }
  return out;
}

}  // namespace convbench::feedback
