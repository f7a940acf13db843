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

#include "convbench/client/scripted_stub.hpp"

#include <fstream>
#include <stdexcept>

#include "convbench/errors.hpp"

namespace convbench::client {

std::vector<StubRule> ScriptedStub::rules_from_json(const Json& script) {
  std::vector<StubRule> rules;
  try {
    for (const auto& j : script.at("rules")) {
      StubRule rule;
      if (j.contains("model")) rule.model_id = j.at("model").get<std::string>();
      if (j.contains("task_id")) rule.task_id = j.at("task_id").get<std::string>();
      if (j.contains("purpose")) {
        const auto p = j.at("purpose").get<std::string>();
        if (p == "code") {
          rule.purpose = Purpose::kCode;
        } else if (p == "feedback") {
          rule.purpose = Purpose::kFeedback;
        } else {
          throw FormatError("stub rule purpose must be 'code' or 'feedback', got '" + p + "'");
        }
      }
      if (j.contains("turn")) rule.turn = j.at("turn").get<int>();
      if (j.contains("min_turn")) rule.min_turn = j.at("min_turn").get<int>();
      if (j.contains("contains")) rule.contains = j.at("contains").get<std::string>();
      rule.completion = j.at("completion").get<std::string>();
      rules.push_back(std::move(rule));
    }
  } catch (const Json::exception& e) {
    throw FormatError(std::string("bad stub script: ") + e.what());
  }
  return rules;
}

std::vector<StubRule> ScriptedStub::load_rules(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open stub script " + path.string());
  try {
    return rules_from_json(Json::parse(in));
  } catch (const Json::parse_error& e) {
    throw FormatError("stub script " + path.string() + ": " + e.what());
  }
}

std::string ScriptedStub::complete(const ChatRequest& request) {
  if (request.messages.empty()) throw std::invalid_argument("complete() needs at least one message");
  ++calls_;
  const std::string* last_user = nullptr;
  for (auto it = request.messages.rbegin(); it != request.messages.rend(); ++it) {
    if (it->role == "user") {
      last_user = &it->content;
      break;
    }
  }
  const auto& tags = request.tags;
  for (const auto& rule : rules_) {
    if (rule.model_id && *rule.model_id != request.params.model_id) continue;
    if (rule.task_id && *rule.task_id != tags.task_id) continue;
    if (rule.purpose && *rule.purpose != tags.purpose) continue;
    if (rule.turn && *rule.turn != tags.turn) continue;
    if (rule.min_turn && tags.turn < *rule.min_turn) continue;
    if (rule.contains &&
        (last_user == nullptr || last_user->find(*rule.contains) == std::string::npos)) {
      continue;
    }
    return rule.completion;
  }
  throw ClientError("scripted stub has no completion for model '" + request.params.model_id +
                    "', task '" + tags.task_id + "', turn " + std::to_string(tags.turn) +
                    (tags.purpose == Purpose::kCode ? " (code)" : " (feedback)"));
}

}  // namespace convbench::client
