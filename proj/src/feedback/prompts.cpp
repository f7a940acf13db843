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

#include "convbench/feedback/prompts.hpp"

#include "convbench/errors.hpp"
#include "convbench/feedback/assets.hpp"
#include "convbench/feedback/format.hpp"

namespace convbench::feedback {

namespace {

constexpr std::string_view kReasoningMarker = "Reasoning:\n";
constexpr std::string_view kFeedbackMarker = "User Feedback:\n";

std::string trimmed(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

std::string system_text(std::string_view instructions) {
  return trimmed(instructions) + "\n\n" + trimmed(assets::response_format());
}

std::string input_section(const Problem& problem) { return "Input:\n" + problem.description; }

}  // namespace

std::string python_block(std::string_view code) {
  std::string out = "```python\n";
  out += code;
  out += "\n```";
  return out;
}

Exemplar parse_exemplar(std::string_view text) {
  const auto r = text.find(kReasoningMarker);
  if (r == std::string_view::npos) throw FormatError("exemplar lacks a 'Reasoning:' section");
  const auto f = text.find(kFeedbackMarker, r);
  if (f == std::string_view::npos) throw FormatError("exemplar lacks a 'User Feedback:' section");
  Exemplar ex;
  ex.input = trimmed(text.substr(0, r));
  constexpr std::string_view kExampleHeader = "Example Input:";
  if (ex.input.rfind(kExampleHeader, 0) == 0) ex.input.replace(0, kExampleHeader.size(), "Input:");
  ex.reasoning = trimmed(text.substr(r + kReasoningMarker.size(), f - r - kReasoningMarker.size()));
  ex.feedback = trimmed(text.substr(f + kFeedbackMarker.size()));
  return ex;
}

PromptBundle build_novice_prompt(const Problem& problem, std::string_view code,
                                 const CompilationFeedback& fc,
                                 const std::optional<ExecutionFeedback>& fe) {
  PromptBundle bundle;
  bundle.level = VerbalLevel::kNovice;
  bundle.system = system_text(assets::novice_system());
  bundle.exemplars.push_back(parse_exemplar(fe ? assets::exemplar_novice_execution()
                                               : assets::exemplar_novice_compilation()));
  bundle.query = input_section(problem) + "\n\nPrevious Code:\n" + python_block(code) + "\n\n" +
                 format_feedback_block(fc, fe);
  return bundle;
}

PromptBundle build_expert_prompt(const Problem& problem, std::string_view code,
                                 const std::optional<ExecutionFeedback>& fe) {
  if (trimmed(problem.ground_truth).empty()) {
    throw MissingGroundTruth("expert feedback needs the ground truth of '" + problem.task_id + "'");
  }
  PromptBundle bundle;
  bundle.level = VerbalLevel::kExpert;
  bundle.system = system_text(assets::expert_system());
  bundle.exemplars.push_back(
      parse_exemplar(fe ? assets::exemplar_expert_execution() : assets::exemplar_expert()));
  bundle.query = input_section(problem) + "\n\nGround Truth Code:\n" +
                 python_block(problem.ground_truth) + "\n\nPrevious Code:\n" + python_block(code);
  if (fe) {
    const auto exec = format_execution_block(*fe);
    if (!exec.empty()) bundle.query += "\n\n" + exec;
  }
  return bundle;
}

std::vector<client::Message> to_messages(const PromptBundle& bundle) {
  std::vector<client::Message> messages;
  messages.push_back({"system", bundle.system});
  for (const auto& ex : bundle.exemplars) {
    messages.push_back({"user", ex.input});
    messages.push_back({"assistant", std::string(kReasoningMarker) + ex.reasoning + "\n\n" +
                                         std::string(kFeedbackMarker) + ex.feedback});
  }
  messages.push_back({"user", bundle.query});
  return messages;
}

}  // namespace convbench::feedback
