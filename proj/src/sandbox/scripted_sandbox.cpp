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

#include "convbench/sandbox/scripted_sandbox.hpp"

#include <fstream>

#include "convbench/errors.hpp"

namespace convbench::sandbox {

namespace {

std::string_view trimmed(std::string_view s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string_view::npos) return {};
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

CaseOutcome outcome_from_json(const Json& j) {
  if (j.is_string()) return {parse_case_status(j.get<std::string>()), {}};
  return {parse_case_status(j.at("status").get<std::string>()), j.value("detail", std::string{})};
}

ScriptedRule rule_from_json(const Json& j) {
  ScriptedRule rule;
  if (j.contains("code")) rule.code = j.at("code").get<std::string>();
  if (j.contains("code_contains")) rule.code_contains = j.at("code_contains").get<std::string>();
  if (j.contains("suite_contains")) rule.suite_contains = j.at("suite_contains").get<std::string>();
  if (j.contains("syntax")) {
    const auto& s = j.at("syntax");
    rule.syntax.ok = s.at("ok").get<bool>();
    rule.syntax.message = rule.syntax.ok ? std::string(kNoSyntaxErrors)
                                         : s.at("message").get<std::string>();
  }
  if (j.contains("cases")) {
    for (const auto& [name, value] : j.at("cases").items()) {
      rule.cases[name] = outcome_from_json(value);
    }
  }
  if (j.contains("otherwise")) rule.otherwise = outcome_from_json(j.at("otherwise"));
  rule.crash = j.value("crash", false);
  return rule;
}

}  // namespace

ScriptedRule ScriptedSandbox::default_fallback() {
  ScriptedRule rule;
  rule.otherwise = {CaseStatus::kError,
                    "Traceback (most recent call last):\n"
                    "RuntimeError: program not known to the scripted sandbox"};
  return rule;
}

ScriptedSandbox::ScriptedSandbox(std::vector<ScriptedRule> rules, ScriptedRule fallback)
    : rules_(std::move(rules)), fallback_(std::move(fallback)) {}

ScriptedSandbox ScriptedSandbox::from_json(const Json& script) {
  ScriptedSandbox sandbox;
  try {
    for (const auto& rule : script.value("rules", Json::array())) {
      sandbox.add_rule(rule_from_json(rule));
    }
    if (script.contains("default")) sandbox.set_fallback(rule_from_json(script.at("default")));
  } catch (const Json::exception& e) {
    throw FormatError(std::string("bad sandbox script: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string("bad sandbox script: ") + e.what());
  }
  return sandbox;
}

ScriptedSandbox ScriptedSandbox::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open sandbox script " + path.string());
  try {
    return from_json(Json::parse(in));
  } catch (const Json::parse_error& e) {
    throw FormatError("sandbox script " + path.string() + ": " + e.what());
  }
}

const ScriptedRule& ScriptedSandbox::match(std::string_view code,
                                           const std::string* suite_code) const {
  const std::string_view needle = trimmed(code);
  for (const auto& rule : rules_) {
    if (rule.code && trimmed(*rule.code) != needle) continue;
    if (rule.code_contains && needle.find(*rule.code_contains) == std::string_view::npos) continue;
    if (rule.suite_contains &&
        (suite_code == nullptr || suite_code->find(*rule.suite_contains) == std::string::npos)) {
      continue;
    }
    return rule;
  }
  return fallback_;
}

CompilationFeedback ScriptedSandbox::syntax_check(std::string_view code) const {
  const ScriptedRule& rule = match(code, nullptr);
  if (rule.crash) throw RunnerUnavailable("scripted runner crash");
  return rule.syntax;
}

ExecutionFeedback ScriptedSandbox::run_tests(std::string_view code, const TestSuite& suite,
                                             Coverage coverage, const RunLimits& limits) const {
  if (!limits.valid()) throw std::invalid_argument("timeout_s and traceback_limit must be > 0");
  const ScriptedRule& rule = match(code, &suite.code);
  if (rule.crash) throw RunnerUnavailable("scripted runner crash");
  ExecutionFeedback feedback;
  feedback.coverage = coverage;
  for (const auto& name : selected_cases(suite, coverage)) {
    auto it = rule.cases.find(name);
    const CaseOutcome& outcome = it != rule.cases.end() ? it->second : rule.otherwise;
    feedback.results.push_back(
        {name, outcome.status,
         outcome.status == CaseStatus::kPass ? std::string()
                                             : truncate_detail(outcome.detail, limits.traceback_limit)});
  }
  return feedback;
}

}  // namespace convbench::sandbox
