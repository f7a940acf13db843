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
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "convbench/io/codec.hpp"
#include "convbench/sandbox/sandbox.hpp"

namespace convbench::sandbox {

struct CaseOutcome {
  CaseStatus status = CaseStatus::kPass;
  std::string detail;
};

// What the scripted sandbox answers for code matching a rule. Matching uses
// whitespace-trimmed code; the first matching rule wins.
struct ScriptedRule {
  std::optional<std::string> code;           // exact match
  std::optional<std::string> code_contains;  // substring match
  std::optional<std::string> suite_contains;
  CompilationFeedback syntax;
  std::map<std::string, CaseOutcome> cases;  // per case name
  CaseOutcome otherwise;                     // unlisted cases
  bool crash = false;                        // simulate runner failure
};

// Deterministic stand-in for the runner process, driven by a table of
// known programs. Lets whole pipelines run without a language runtime.
//
// Script file (JSON):
//   {"rules": [{"code": "...", "code_contains": "...", "suite_contains": "...",
//               "syntax": {"ok": false, "message": "..."},
//               "cases": {"test_x": {"status": "fail", "detail": "..."}},
//               "otherwise": {"status": "pass"}, "crash": false}],
//    "default": {<rule without matchers>}}
class ScriptedSandbox final : public Sandbox {
 public:
  ScriptedSandbox() = default;
  ScriptedSandbox(std::vector<ScriptedRule> rules, ScriptedRule fallback);

  static ScriptedSandbox from_json(const Json& script);
  static ScriptedSandbox load(const std::filesystem::path& path);

  void add_rule(ScriptedRule rule) { rules_.push_back(std::move(rule)); }
  void set_fallback(ScriptedRule rule) { fallback_ = std::move(rule); }

  CompilationFeedback syntax_check(std::string_view code) const override;
  ExecutionFeedback run_tests(std::string_view code, const TestSuite& suite, Coverage coverage,
                              const RunLimits& limits) const override;

 private:
  const ScriptedRule& match(std::string_view code, const std::string* suite_code) const;

  std::vector<ScriptedRule> rules_;
  ScriptedRule fallback_ = default_fallback();

  static ScriptedRule default_fallback();
};

}  // namespace convbench::sandbox
