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
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "convbench/client/chat.hpp"
#include "convbench/io/codec.hpp"

namespace convbench::client {

// One scripted answer. Unset matchers match anything; `contains` looks at
// the last user message, which carries the feedback on refinement turns.
struct StubRule {
  std::optional<std::string> model_id;
  std::optional<std::string> task_id;
  std::optional<Purpose> purpose;
  std::optional<int> turn;
  std::optional<int> min_turn;
  std::optional<std::string> contains;
  std::string completion;
};

// Deterministic offline model: the first rule matching a request wins, and
// a request no rule covers is an error rather than a silent default.
//
// Script file: {"rules": [{"model": "...", "task_id": "...",
//   "purpose": "code"|"feedback", "turn": 0, "min_turn": 1,
//   "contains": "test_case_1", "completion": "..."}]}
class ScriptedStub final : public ChatClient {
 public:
  ScriptedStub() = default;
  explicit ScriptedStub(std::vector<StubRule> rules) : rules_(std::move(rules)) {}

  static std::vector<StubRule> rules_from_json(const Json& script);
  static std::vector<StubRule> load_rules(const std::filesystem::path& path);

  ScriptedStub& add(StubRule rule) {
    rules_.push_back(std::move(rule));
    return *this;
  }

  std::string complete(const ChatRequest& request) override;

  std::size_t calls() const noexcept { return calls_.load(); }

 private:
  std::vector<StubRule> rules_;
  std::atomic<std::size_t> calls_{0};
};

}  // namespace convbench::client
