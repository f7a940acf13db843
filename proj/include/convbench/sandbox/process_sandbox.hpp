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

#include <chrono>
#include <string>
#include <vector>

#include "convbench/io/codec.hpp"
#include "convbench/sandbox/sandbox.hpp"

namespace convbench::sandbox {

// Wire format of the runner protocol: one JSON request on the runner's
// stdin, one JSON response line on its stdout.
//
//   request  {"mode", "code", "suite_code", "case_names", "timeout_s",
//             "traceback_limit"}
//   syntax   {"syntax_ok": bool, "syntax_message": string}
//   run      {"results": [{"case_name", "status", "detail"}]}
//
// A runner that cannot serve a request answers {"error": string}.
struct RunRequest {
  enum class Mode { kSyntax, kRun };

  Mode mode = Mode::kRun;
  std::string code;
  std::string suite_code;
  std::vector<std::string> case_names;
  double timeout_s = 10.0;
  std::size_t traceback_limit = 2000;
};

Json encode_request(const RunRequest& request);

// Both throw RunnerUnavailable on anything that is not a conforming answer.
CompilationFeedback decode_syntax_response(const std::string& stdout_text);
std::vector<CaseResult> decode_run_response(const std::string& stdout_text,
                                            const RunRequest& request);

struct ProcessSandboxOptions {
  std::vector<std::string> command;  // runner argv
  // Added to each case's timeout when computing the kill deadline.
  std::chrono::milliseconds per_case_grace{2000};
  // Interpreter start-up and syntax-only requests.
  std::chrono::milliseconds startup_grace{10'000};
};

// Speaks the runner protocol to a fresh runner process per request, each in
// its own temporary working directory.
class ProcessSandbox final : public Sandbox {
 public:
  explicit ProcessSandbox(ProcessSandboxOptions options);

  CompilationFeedback syntax_check(std::string_view code) const override;
  ExecutionFeedback run_tests(std::string_view code, const TestSuite& suite, Coverage coverage,
                              const RunLimits& limits) const override;

  const ProcessSandboxOptions& options() const noexcept { return options_; }

 private:
  std::string exchange(const RunRequest& request, std::chrono::milliseconds deadline,
                       bool* deadline_exceeded) const;

  ProcessSandboxOptions options_;
};

}  // namespace convbench::sandbox
