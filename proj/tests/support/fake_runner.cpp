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

// Stand-in for the runner process used by the bridge tests. The first
// argument picks a behaviour; "ok" follows the protocol and derives each
// case's outcome from markers in the candidate code.
#include <json.hpp>

#include <chrono>
#include <iostream>
#include <string>
#include <thread>

using nlohmann::json;

namespace {

bool has(const std::string& code, const std::string& marker) { return code.find(marker) != std::string::npos; }

json run_case(const std::string& code, const std::string& name) {
  if (has(code, "fail:" + name)) {
    std::string detail = "Traceback (most recent call last):\n  File \"__test__.py\", line 78, in " + name +
                         "\nAssertionError: " + name + " failed";
    if (has(code, "LONG")) detail += std::string(5000, 'x') + "\xC3\xA9";
    return {{"case_name", name}, {"status", "fail"}, {"detail", detail}};
  }
  if (has(code, "raise:" + name)) {
    return {{"case_name", name}, {"status", "error"}, {"detail", "OSError: no such file"}};
  }
  if (has(code, "hang:" + name)) std::this_thread::sleep_for(std::chrono::seconds(30));
  return {{"case_name", name}, {"status", "pass"}, {"detail", "stale output"}};
}

}  // namespace

int main(int argc, char** argv) {
  const std::string mode = argc > 1 ? argv[1] : "ok";
  std::string line;
  std::getline(std::cin, line);
  if (mode == "crash") {
    std::cerr << "fatal: interpreter exploded\n";
    return 3;
  }
  if (mode == "garbage") {
    std::cout << "this is not json\n";
    return 0;
  }
  if (mode == "silent") return 0;
  if (mode == "sleep") {
    std::this_thread::sleep_for(std::chrono::seconds(30));
    return 0;
  }
  json request;
  try {
    request = json::parse(line);
  } catch (const json::exception& e) {
    std::cout << json{{"error", std::string("malformed request: ") + e.what()}}.dump() << '\n';
    return 0;
  }
  if (mode == "error") {
    std::cout << json{{"error", "cannot serve"}}.dump() << '\n';
    return 0;
  }
  const std::string code = request.value("code", "");
  if (request.value("mode", "") == "syntax") {
    if (has(code, "SYNTAX")) {
      std::cout << json{{"syntax_ok", false},
                        {"syntax_message",
                         "  File \"tmp.py\", line 6\n    return int_list\n                   ^\n"
                         "IndentationError: unindent does not match any outer indentation level"}}
                       .dump()
                << '\n';
    } else {
      std::cout << json{{"syntax_ok", true}, {"syntax_message", "No syntax errors"}}.dump() << '\n';
    }
    return 0;
  }
  json results = json::array();
  for (const auto& name : request.at("case_names")) results.push_back(run_case(code, name.get<std::string>()));
  if (mode == "reorder" && results.size() > 1) std::swap(results[0], results[1]);
  if (mode == "short" && !results.empty()) results.erase(results.size() - 1);
  if (mode == "badstatus" && !results.empty()) results[0]["status"] = "exploded";
  std::cout << json{{"results", results}}.dump() << '\n';
  return 0;
}
