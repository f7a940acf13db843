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

#include <json.hpp>

#include <optional>
#include <string>

#include "convbench/types.hpp"

namespace convbench {

// Key order is fixed so that serialize -> parse -> serialize is byte-stable.
using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

void to_json(Json& j, const TestSuite& v);
void from_json(const Json& j, TestSuite& v);
void to_json(Json& j, const Problem& v);
void from_json(const Json& j, Problem& v);
void to_json(Json& j, const FeedbackCombination& v);
void from_json(const Json& j, FeedbackCombination& v);
void to_json(Json& j, const CaseResult& v);
void from_json(const Json& j, CaseResult& v);
void to_json(Json& j, const CompilationFeedback& v);
void from_json(const Json& j, CompilationFeedback& v);
void to_json(Json& j, const ExecutionFeedback& v);
void from_json(const Json& j, ExecutionFeedback& v);
void to_json(Json& j, const LeakageFlags& v);
void from_json(const Json& j, LeakageFlags& v);
void to_json(Json& j, const VerbalFeedback& v);
void from_json(const Json& j, VerbalFeedback& v);
void to_json(Json& j, const FeedbackBundle& v);
void from_json(const Json& j, FeedbackBundle& v);
void to_json(Json& j, const Turn& v);
void from_json(const Json& j, Turn& v);
void to_json(Json& j, const Trajectory& v);
void from_json(const Json& j, Trajectory& v);

// Optional members are omitted when empty; null reads back as empty.
template <typename T>
void put_optional(Json& j, const char* key, const std::optional<T>& value) {
  if (value) j[key] = *value;
}

template <typename T>
void get_optional(const Json& j, const char* key, std::optional<T>& out) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) {
    out.reset();
  } else {
    out = it->template get<T>();
  }
}

// Compact single-line dump used by every JSONL writer.
std::string dump_line(const Json& j);

}  // namespace convbench
