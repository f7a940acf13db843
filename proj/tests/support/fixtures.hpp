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

#include <atomic>
#include <chrono>
#include <filesystem>
#include <functional>
#include <mutex>
#include <string>
#include <vector>

#include "convbench/client/chat.hpp"
#include "convbench/client/scripted_stub.hpp"
#include "convbench/sandbox/scripted_sandbox.hpp"
#include "convbench/types.hpp"

namespace convbench::testing {

// The sort_func task used throughout the in-context examples.
extern const char* const kSortDescription;
extern const char* const kSortGroundTruth;
extern const char* const kSortSuiteCode;
extern const char* const kBubbleDescending;   // sorts the wrong way round
extern const char* const kBubbleBadIndent;    // misaligned `return int_list`
extern const char* const kTestCase1Traceback;
extern const char* const kIndentationDiagnostic;

Problem sort_problem(std::string task_id = "sort/0");

// Knows the ground truth, the descending bubble sort and the badly indented
// variant; anything else errors on every case.
sandbox::ScriptedSandbox sort_sandbox();

// Turn 0 answers with the descending bubble sort; any later request whose
// feedback mentions test_case_1 gets the correct sort, other refinements
// repeat the bubble sort. Feedback requests get a short novice review.
std::vector<client::StubRule> sort_stub_rules(const std::string& model_id = "stub-model");

std::string fenced(const std::string& code);

class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const noexcept { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& text);

// Fault injection: forwards to `inner` unless `fail_when` says otherwise,
// in which case `raise` is invoked (it should throw).
class FlakyClient final : public client::ChatClient {
 public:
  FlakyClient(client::ChatClient& inner, std::function<bool(const client::ChatRequest&, std::size_t)> fail_when,
              std::function<void()> raise)
      : inner_(inner), fail_when_(std::move(fail_when)), raise_(std::move(raise)) {}

  std::string complete(const client::ChatRequest& request) override {
    const std::size_t n = calls_++;
    if (fail_when_(request, n)) raise_();
    return inner_.complete(request);
  }

 private:
  client::ChatClient& inner_;
  std::function<bool(const client::ChatRequest&, std::size_t)> fail_when_;
  std::function<void()> raise_;
  std::atomic<std::size_t> calls_{0};
};

// Slows every request down; used to make a run long enough to interrupt.
class SlowClient final : public client::ChatClient {
 public:
  SlowClient(client::ChatClient& inner, std::chrono::milliseconds delay) : inner_(inner), delay_(delay) {}
  std::string complete(const client::ChatRequest& request) override;

 private:
  client::ChatClient& inner_;
  std::chrono::milliseconds delay_;
};

// Records every request it serves, in order, before forwarding it.
class RecordingClient final : public client::ChatClient {
 public:
  explicit RecordingClient(client::ChatClient& inner) : inner_(inner) {}
  std::string complete(const client::ChatRequest& request) override;
  std::vector<client::ChatRequest> requests() const;

 private:
  client::ChatClient& inner_;
  mutable std::mutex mutex_;
  std::vector<client::ChatRequest> requests_;
};

}  // namespace convbench::testing
