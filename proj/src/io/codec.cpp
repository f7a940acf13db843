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

#include "convbench/io/codec.hpp"

#include <stdexcept>

namespace convbench {

namespace {

VerbalLevel parse_verbal_level(const std::string& s) {
  if (s == "novice") return VerbalLevel::kNovice;
  if (s == "expert") return VerbalLevel::kExpert;
  if (s == "none") return VerbalLevel::kNone;
  throw std::invalid_argument("unknown verbal level '" + s + "'");
}

Coverage parse_coverage(const std::string& s) {
  if (s == "partial") return Coverage::kPartial;
  if (s == "full") return Coverage::kFull;
  throw std::invalid_argument("unknown coverage '" + s + "'");
}

}  // namespace

void to_json(Json& j, const TestSuite& v) {
  j = Json{{"code", v.code}, {"case_names", v.case_names}};
}
void from_json(const Json& j, TestSuite& v) {
  j.at("code").get_to(v.code);
  j.at("case_names").get_to(v.case_names);
}

void to_json(Json& j, const Problem& v) {
  j = Json{{"task_id", v.task_id},
           {"description", v.description},
           {"ground_truth", v.ground_truth},
           {"suite", v.suite},
           {"entry_point", v.entry_point}};
}
void from_json(const Json& j, Problem& v) {
  j.at("task_id").get_to(v.task_id);
  j.at("description").get_to(v.description);
  j.at("ground_truth").get_to(v.ground_truth);
  j.at("suite").get_to(v.suite);
  j.at("entry_point").get_to(v.entry_point);
}

void to_json(Json& j, const FeedbackCombination& v) { j = to_string(v); }
void from_json(const Json& j, FeedbackCombination& v) {
  v = parse_combination(j.get<std::string>());
}

void to_json(Json& j, const CaseResult& v) {
  j = Json{{"case_name", v.case_name},
           {"status", std::string(to_string(v.status))},
           {"detail", v.detail}};
}
void from_json(const Json& j, CaseResult& v) {
  j.at("case_name").get_to(v.case_name);
  v.status = parse_case_status(j.at("status").get<std::string>());
  v.detail = j.value("detail", std::string{});
}

void to_json(Json& j, const CompilationFeedback& v) {
  j = Json{{"ok", v.ok}, {"message", v.message}};
}
void from_json(const Json& j, CompilationFeedback& v) {
  j.at("ok").get_to(v.ok);
  j.at("message").get_to(v.message);
}

void to_json(Json& j, const ExecutionFeedback& v) {
  j = Json{{"coverage", std::string(to_string(v.coverage))}, {"results", v.results}};
}
void from_json(const Json& j, ExecutionFeedback& v) {
  v.coverage = parse_coverage(j.at("coverage").get<std::string>());
  j.at("results").get_to(v.results);
}

void to_json(Json& j, const LeakageFlags& v) {
  j = Json{{"mentions_ground_truth", v.mentions_ground_truth},
           {"contains_code_block", v.contains_code_block}};
}
void from_json(const Json& j, LeakageFlags& v) {
  j.at("mentions_ground_truth").get_to(v.mentions_ground_truth);
  j.at("contains_code_block").get_to(v.contains_code_block);
}

void to_json(Json& j, const VerbalFeedback& v) {
  j = Json{{"level", std::string(to_string(v.level))}, {"text", v.text}, {"leakage", v.leakage}};
}
void from_json(const Json& j, VerbalFeedback& v) {
  v.level = parse_verbal_level(j.at("level").get<std::string>());
  j.at("text").get_to(v.text);
  j.at("leakage").get_to(v.leakage);
}

void to_json(Json& j, const FeedbackBundle& v) {
  j = Json::object();
  put_optional(j, "compilation", v.compilation);
  put_optional(j, "execution", v.execution);
  put_optional(j, "verbal", v.verbal);
}
void from_json(const Json& j, FeedbackBundle& v) {
  get_optional(j, "compilation", v.compilation);
  get_optional(j, "execution", v.execution);
  get_optional(j, "verbal", v.verbal);
}

void to_json(Json& j, const Turn& v) {
  j = Json{{"index", v.index}, {"code", v.code}, {"solved", v.solved}};
  if (!v.feedback.empty()) j["feedback"] = v.feedback;
  put_optional(j, "extraction_error", v.extraction_error);
}
void from_json(const Json& j, Turn& v) {
  j.at("index").get_to(v.index);
  j.at("code").get_to(v.code);
  j.at("solved").get_to(v.solved);
  v.feedback = j.contains("feedback") ? j.at("feedback").get<FeedbackBundle>() : FeedbackBundle{};
  get_optional(j, "extraction_error", v.extraction_error);
}

void to_json(Json& j, const Trajectory& v) {
  j = Json{{"task_id", v.task_id},
           {"model_id", v.model_id},
           {"omega", v.omega},
           {"max_turns", v.max_turns},
           {"turns", v.turns}};
  j["first_success"] = v.first_success ? Json(*v.first_success) : Json(nullptr);
  put_optional(j, "terminal_feedback", v.terminal_feedback);
}
void from_json(const Json& j, Trajectory& v) {
  j.at("task_id").get_to(v.task_id);
  j.at("model_id").get_to(v.model_id);
  j.at("omega").get_to(v.omega);
  j.at("max_turns").get_to(v.max_turns);
  j.at("turns").get_to(v.turns);
  get_optional(j, "first_success", v.first_success);
  get_optional(j, "terminal_feedback", v.terminal_feedback);
}

std::string dump_line(const Json& j) {
  return j.dump(-1, ' ', false, Json::error_handler_t::replace);
}

}  // namespace convbench
