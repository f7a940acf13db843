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

#include "convbench/io/dataset.hpp"

#include <fstream>
#include <regex>
#include <set>

#include "convbench/errors.hpp"
#include "convbench/io/hash.hpp"
#include "convbench/validate.hpp"

namespace convbench {

std::vector<std::string> discover_case_names(std::string_view test_code) {
  static const std::regex kTestMethod(R"(def\s+(test\w*)\s*\(\s*self)");
  std::vector<std::string> names;
  std::set<std::string> seen;
  const std::string code(test_code);
  for (auto it = std::sregex_iterator(code.begin(), code.end(), kTestMethod); it != std::sregex_iterator();
       ++it) {
    auto name = (*it)[1].str();
    if (seen.insert(name).second) names.push_back(std::move(name));
  }
  return names;
}

Problem problem_from_record(const Json& record) {
  if (!record.is_object()) throw ValidationError("record is not a JSON object");
  const auto text = [&](const char* key) {
    const auto it = record.find(key);
    if (it == record.end() || it->is_null()) throw ValidationError(std::string("missing field '") + key + "'");
    if (!it->is_string()) throw ValidationError(std::string("field '") + key + "' is not a string");
    return it->get<std::string>();
  };
  Problem p;
  p.task_id = text("task_id");
  p.description = text("instruct_prompt");
  p.ground_truth = text("canonical_solution");
  if (const auto it = record.find("code_prompt"); it != record.end() && it->is_string()) {
    p.ground_truth = it->get<std::string>() + p.ground_truth;
  }
  p.suite.code = text("test");
  p.entry_point = text("entry_point");
  if (const auto it = record.find("case_names"); it != record.end() && !it->is_null()) {
    try {
      p.suite.case_names = it->get<std::vector<std::string>>();
    } catch (const Json::exception&) {
      throw ValidationError("field 'case_names' is not a list of strings");
    }
  } else {
    p.suite.case_names = discover_case_names(p.suite.code);
  }
  if (const auto issues = validate_problem(p); !issues.empty()) {
    std::string joined;
    for (const auto& i : issues) joined += (joined.empty() ? "" : "; ") + i;
    throw ValidationError(joined);
  }
  return p;
}

Dataset load_dataset(const std::filesystem::path& path, const sandbox::Sandbox* oracle,
                     const sandbox::RunLimits& limits) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open dataset " + path.string());
  Dataset ds;
  ds.path = path;
  ds.sha256 = sha256_file(path);
  std::set<std::string> ids;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    Json record;
    try {
      record = Json::parse(line);
    } catch (const Json::parse_error& e) {
      throw ParseError(e.what(), line_no);
    }
    std::string id;
    if (record.is_object() && record.contains("task_id") && record["task_id"].is_string()) {
      id = record["task_id"].get<std::string>();
    }
    try {
      Problem p = problem_from_record(record);
      if (!ids.insert(p.task_id).second) throw ValidationError("duplicate task_id '" + p.task_id + "'");
      if (oracle != nullptr) {
        const auto fe = oracle->run_tests(p.ground_truth, p.suite, Coverage::kFull, limits);
        for (const auto& r : fe.results) {
          if (r.status != CaseStatus::kPass) {
            throw ValidationError("oracle failure: ground truth does not pass " + r.case_name + " (" +
                                  std::string(to_string(r.status)) + ")");
          }
        }
      }
      ds.problems.push_back(std::move(p));
    } catch (const ValidationError& e) {
      ds.rejects.push_back({line_no, id, e.what()});
    }
  }
  return ds;
}

}  // namespace convbench
