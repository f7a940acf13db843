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

#include "fixtures.hpp"

#include <stdlib.h>

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace convbench::testing {

const char* const kSortDescription =
    "Sort a list of integers in ascending order. The function should take a list of integers and "
    "return a sorted list. Ensure that the function handles negative numbers and zeros correctly. "
    "Check if the function's output is a sorted list.\n"
    "```python\n"
    ">>> sorted_list = sort_func([3, -1, 0, 5, -10, 2])\n"
    ">>> sorted_list\n"
    "[-10, -1, 0, 2, 3, 5]\n"
    "```\n"
    "You should write self-contained code starting with:\n"
    "```python\n"
    "def sort_func(int_list):\n"
    "```";

const char* const kSortGroundTruth =
    "def sort_func(int_list):\n"
    "    return sorted(int_list)";

const char* const kSortSuiteCode =
    "import unittest\n"
    "\n"
    "class TestCases(unittest.TestCase):\n"
    "    def test_case_1(self):\n"
    "        self.assertEqual(sort_func([3, -1, 0, 5, -10, 2]), [-10, -1, 0, 2, 3, 5],\n"
    "                         'sort_func([3, -1, 0, 5, -10, 2]) != [-10, -1, 0, 2, 3, 5]')\n"
    "    def test_case_2(self):\n"
    "        self.assertEqual(sort_func([0, 0, -1]), [-1, 0, 0])\n"
    "    def test_case_3(self):\n"
    "        self.assertEqual(sort_func([5, 4, 3, 2, 1]), [1, 2, 3, 4, 5])\n"
    "    def test_case_4(self):\n"
    "        self.assertEqual(sort_func([-2, 7]), [-2, 7])\n"
    "    def test_case_5(self):\n"
    "        self.assertEqual(sort_func([]), [])\n";

const char* const kBubbleDescending =
    "def sort_func(int_list):\n"
    "    for i in range(len(int_list)):\n"
    "        for j in range(len(int_list) - 1):\n"
    "            if int_list[j] < int_list[j + 1]:\n"
    "                int_list[j], int_list[j + 1] = int_list[j + 1], int_list[j]\n"
    "    return int_list\n"
    "\n"
    "test_list = [3, -1, 0, 5, -10, 2]\n"
    "print(sort_func(test_list))";

const char* const kBubbleBadIndent =
    "def sort_func(int_list):\n"
    "    for i in range(len(int_list)):\n"
    "        for j in range(len(int_list) - 1):\n"
    "            if int_list[j] < int_list[j + 1]:\n"
    "                int_list[j], int_list[j + 1] = int_list[j + 1], int_list[j]\n"
    "   return int_list\n"
    "\n"
    "test_list = [3, -1, 0, 5, -10, 2]\n"
    "print(sort_func(test_list))";

const char* const kTestCase1Traceback =
    "Traceback (most recent call last):\n"
    "  File \"__test__.py\", line 78, in test_case_1\n"
    "AssertionError: sort_func([3, -1, 0, 5, -10, 2]) != [-10, -1, 0, 2, 3, 5]";

const char* const kIndentationDiagnostic =
    "Traceback (most recent call last):\n"
    "  File \"tmp.py\", line 6\n"
    "    return int_list\n"
    "                   ^\n"
    "IndentationError: unindent does not match any outer indentation level";

Problem sort_problem(std::string task_id) {
  Problem p;
  p.task_id = std::move(task_id);
  p.description = kSortDescription;
  p.ground_truth = kSortGroundTruth;
  p.suite.code = kSortSuiteCode;
  p.suite.case_names = {"test_case_1", "test_case_2", "test_case_3", "test_case_4", "test_case_5"};
  p.entry_point = "sort_func";
  return p;
}

sandbox::ScriptedSandbox sort_sandbox() {
  sandbox::ScriptedSandbox sb;

  sandbox::ScriptedRule truth;
  truth.code = kSortGroundTruth;
  sb.add_rule(truth);

  sandbox::ScriptedRule bubble;
  bubble.code = kBubbleDescending;
  bubble.cases["test_case_1"] = {CaseStatus::kFail, kTestCase1Traceback};
  bubble.cases["test_case_2"] = {CaseStatus::kFail,
                                 "Traceback (most recent call last):\n  File \"__test__.py\", line 80, in "
                                 "test_case_2\nAssertionError: [0, 0, -1] != [-1, 0, 0]"};
  bubble.cases["test_case_3"] = {CaseStatus::kFail,
                                 "Traceback (most recent call last):\n  File \"__test__.py\", line 82, in "
                                 "test_case_3\nAssertionError: [5, 4, 3, 2, 1] != [1, 2, 3, 4, 5]"};
  bubble.cases["test_case_4"] = {CaseStatus::kFail,
                                 "Traceback (most recent call last):\n  File \"__test__.py\", line 84, in "
                                 "test_case_4\nAssertionError: [7, -2] != [-2, 7]"};
  sb.add_rule(bubble);

  sandbox::ScriptedRule indent;
  indent.code = kBubbleBadIndent;
  indent.syntax = CompilationFeedback::failure(kIndentationDiagnostic);
  indent.otherwise = {CaseStatus::kError, kIndentationDiagnostic};
  sb.add_rule(indent);
  return sb;
}

std::string fenced(const std::string& code) { return "```python\n" + code + "\n```"; }

std::vector<client::StubRule> sort_stub_rules(const std::string& model_id) {
  std::vector<client::StubRule> rules;
  client::StubRule review;
  review.model_id = std::nullopt;
  review.purpose = client::Purpose::kFeedback;
  review.completion =
      "Reasoning:\nLet's think step by step in order to produce the novice-level `user_feedback`.\n\n"
      "User Feedback:\nThe list comes back in descending order; I expected ascending order.";
  rules.push_back(review);

  client::StubRule first;
  first.model_id = model_id;
  first.purpose = client::Purpose::kCode;
  first.turn = 0;
  first.completion = "Here is my solution:\n" + fenced(kBubbleDescending);
  rules.push_back(first);

  client::StubRule fixed;
  fixed.model_id = model_id;
  fixed.purpose = client::Purpose::kCode;
  fixed.contains = "test_case_1";
  fixed.completion = "Fixed:\n" + fenced(kSortGroundTruth);
  rules.push_back(fixed);

  client::StubRule stubborn;
  stubborn.model_id = model_id;
  stubborn.purpose = client::Purpose::kCode;
  stubborn.completion = fenced(kBubbleDescending);
  rules.push_back(stubborn);
  return rules;
}

TempDir::TempDir() {
  std::string pattern = (std::filesystem::temp_directory_path() / "convbench-test-XXXXXX").string();
  if (::mkdtemp(pattern.data()) == nullptr) throw std::runtime_error("mkdtemp failed");
  path_ = pattern;
}

TempDir::~TempDir() {
  std::error_code ignored;
  std::filesystem::remove_all(path_, ignored);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
}

std::string SlowClient::complete(const client::ChatRequest& request) {
  std::this_thread::sleep_for(delay_);
  return inner_.complete(request);
}

std::string RecordingClient::complete(const client::ChatRequest& request) {
  {
    std::lock_guard lock(mutex_);
    requests_.push_back(request);
  }
  return inner_.complete(request);
}

std::vector<client::ChatRequest> RecordingClient::requests() const {
  std::lock_guard lock(mutex_);
  return requests_;
}

}  // namespace convbench::testing
