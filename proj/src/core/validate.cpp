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

#include "convbench/validate.hpp"

#include <cctype>
#include <unordered_set>

namespace convbench {

namespace {

bool is_identifier(const std::string& s) {
  if (s.empty() || std::isdigit(static_cast<unsigned char>(s.front()))) return false;
  for (unsigned char c : s) {
    if (!std::isalnum(c) && c != '_') return false;
  }
  return true;
}

bool blank(const std::string& s) {
  return s.find_first_not_of(" \t\r\n") == std::string::npos;
}

}  // namespace

std::vector<std::string> validate_problem(const Problem& problem) {
  std::vector<std::string> report;
  if (blank(problem.task_id)) report.push_back("empty task_id");
  if (blank(problem.description)) report.push_back("empty description");
  if (!is_identifier(problem.entry_point)) {
    report.push_back("invalid entry_point '" + problem.entry_point + "'");
  }
  if (blank(problem.ground_truth)) report.push_back("empty ground_truth");
  if (blank(problem.suite.code)) report.push_back("empty test code");
  if (problem.suite.case_names.empty()) report.push_back("empty suite: no test cases");

  std::unordered_set<std::string> seen;
  for (const auto& name : problem.suite.case_names) {
    if (name.empty()) {
      report.push_back("empty case name");
    } else if (!seen.insert(name).second) {
      report.push_back("duplicate case '" + name + "'");
    }
  }
  return report;
}

}  // namespace convbench
