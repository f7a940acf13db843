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

#include "convbench/sandbox/process_sandbox.hpp"

#include <stdlib.h>

#include <filesystem>
#include <sstream>
#include <system_error>

#include "convbench/errors.hpp"
#include "convbench/sandbox/subprocess.hpp"

namespace convbench::sandbox {

namespace {

// mkdtemp-backed scratch directory removed on scope exit.
class ScratchDir {
 public:
  ScratchDir() {
    std::string pattern = (std::filesystem::temp_directory_path() / "convbench-run-XXXXXX").string();
    if (::mkdtemp(pattern.data()) == nullptr) {
      throw RunnerUnavailable("cannot create a scratch directory under " +
                              std::filesystem::temp_directory_path().string());
    }
    path_ = pattern;
  }
  ScratchDir(const ScratchDir&) = delete;
  ScratchDir& operator=(const ScratchDir&) = delete;
  ~ScratchDir() {
    std::error_code ignored;
    std::filesystem::remove_all(path_, ignored);
  }
  const std::filesystem::path& path() const noexcept { return path_; }

 private:
  std::filesystem::path path_;
};

Json parse_response_line(const std::string& stdout_text) {
  std::istringstream lines(stdout_text);
  std::string line;
  while (std::getline(lines, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    Json j;
    try {
      j = Json::parse(line);
    } catch (const Json::parse_error& e) {
      throw RunnerUnavailable(std::string("runner sent malformed JSON: ") + e.what());
    }
    if (!j.is_object()) throw RunnerUnavailable("runner response is not a JSON object");
    if (auto it = j.find("error"); it != j.end()) {
      throw RunnerUnavailable("runner protocol error: " +
                              (it->is_string() ? it->get<std::string>() : it->dump()));
    }
    return j;
  }
  throw RunnerUnavailable("runner produced no response");
}

std::string tail(const std::string& text, std::size_t n) {
  return text.size() <= n ? text : "..." + text.substr(text.size() - n);
}

}  // namespace

std::string truncate_detail(std::string_view detail, std::size_t limit) {
  if (detail.size() <= limit) return std::string(detail);
  std::size_t cut = limit;
  // Back off continuation bytes so the result stays valid UTF-8.
  while (cut > 0 && (static_cast<unsigned char>(detail[cut]) & 0xC0) == 0x80) --cut;
  return std::string(detail.substr(0, cut));
}

Json encode_request(const RunRequest& request) {
  return Json{{"mode", request.mode == RunRequest::Mode::kSyntax ? "syntax" : "run"},
              {"code", request.code},
              {"suite_code", request.suite_code},
              {"case_names", request.case_names},
              {"timeout_s", request.timeout_s},
              {"traceback_limit", request.traceback_limit}};
}

CompilationFeedback decode_syntax_response(const std::string& stdout_text) {
  const Json j = parse_response_line(stdout_text);
  try {
    const bool ok = j.at("syntax_ok").get<bool>();
    std::string message = j.at("syntax_message").get<std::string>();
    if (ok) return CompilationFeedback::success();
    if (message.empty()) throw RunnerUnavailable("syntax failure without a diagnostic");
    return CompilationFeedback::failure(std::move(message));
  } catch (const Json::exception& e) {
    throw RunnerUnavailable(std::string("bad syntax response: ") + e.what());
  }
}

std::vector<CaseResult> decode_run_response(const std::string& stdout_text,
                                            const RunRequest& request) {
  const Json j = parse_response_line(stdout_text);
  std::vector<CaseResult> results;
  try {
    for (const auto& item : j.at("results")) {
      CaseResult r;
      r.case_name = item.at("case_name").get<std::string>();
      r.status = parse_case_status(item.at("status").get<std::string>());
      r.detail = r.status == CaseStatus::kPass
                     ? std::string()
                     : truncate_detail(item.value("detail", std::string{}), request.traceback_limit);
      results.push_back(std::move(r));
    }
  } catch (const Json::exception& e) {
    throw RunnerUnavailable(std::string("bad run response: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw RunnerUnavailable(std::string("bad run response: ") + e.what());
  }
  if (results.size() != request.case_names.size()) {
    throw RunnerUnavailable("runner returned " + std::to_string(results.size()) +
                            " results for " + std::to_string(request.case_names.size()) +
                            " requested cases");
  }
  for (std::size_t i = 0; i < results.size(); ++i) {
    if (results[i].case_name != request.case_names[i]) {
      throw RunnerUnavailable("runner answered case '" + results[i].case_name +
                              "' where '" + request.case_names[i] + "' was requested");
    }
  }
  return results;
}

ProcessSandbox::ProcessSandbox(ProcessSandboxOptions options) : options_(std::move(options)) {
  if (options_.command.empty()) throw RunnerUnavailable("no runner command configured");
}

std::string ProcessSandbox::exchange(const RunRequest& request, std::chrono::milliseconds deadline,
                                     bool* deadline_exceeded) const {
  ScratchDir scratch;
  ProcessOptions popts;
  popts.deadline = deadline;
  popts.working_dir = scratch.path();
  const ProcessResult result =
      run_process(options_.command, dump_line(encode_request(request)) + "\n", popts);
  *deadline_exceeded = result.deadline_exceeded;
  if (result.deadline_exceeded) return {};
  if (result.out.find_first_not_of(" \t\r\n") == std::string::npos) {
    std::string why = result.term_signal ? "killed by signal " + std::to_string(result.term_signal)
                                         : "exit code " + std::to_string(result.exit_code);
    throw RunnerUnavailable("runner gave no response (" + why + "): " + tail(result.err, 500));
  }
  return result.out;
}

CompilationFeedback ProcessSandbox::syntax_check(std::string_view code) const {
  RunRequest request;
  request.mode = RunRequest::Mode::kSyntax;
  request.code = std::string(code);
  bool late = false;
  const std::string out = exchange(request, options_.startup_grace, &late);
  if (late) throw RunnerUnavailable("runner did not answer a syntax request in time");
  return decode_syntax_response(out);
}

ExecutionFeedback ProcessSandbox::run_tests(std::string_view code, const TestSuite& suite,
                                            Coverage coverage, const RunLimits& limits) const {
  if (!limits.valid()) throw std::invalid_argument("timeout_s and traceback_limit must be > 0");
  RunRequest request;
  request.mode = RunRequest::Mode::kRun;
  request.code = std::string(code);
  request.suite_code = suite.code;
  request.case_names = selected_cases(suite, coverage);
  request.timeout_s = limits.timeout_s;
  request.traceback_limit = limits.traceback_limit;

  ExecutionFeedback feedback;
  feedback.coverage = coverage;
  if (request.case_names.empty()) return feedback;

  const auto per_case = std::chrono::milliseconds(static_cast<long long>(limits.timeout_s * 1000.0)) +
                        options_.per_case_grace;
  const auto deadline =
      options_.startup_grace + per_case * static_cast<long long>(request.case_names.size());
  bool late = false;
  const std::string out = exchange(request, deadline, &late);
  if (late) {
    // The runner as a whole overran; nothing it computed can be trusted.
    for (const auto& name : request.case_names) {
      feedback.results.push_back(
          {name, CaseStatus::kTimeout,
           truncate_detail("TimeoutError: runner exceeded its deadline", limits.traceback_limit)});
    }
    return feedback;
  }
  feedback.results = decode_run_response(out, request);
  return feedback;
}

}  // namespace convbench::sandbox
