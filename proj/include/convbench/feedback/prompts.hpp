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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "convbench/client/chat.hpp"
#include "convbench/types.hpp"

namespace convbench::feedback {

// One in-context demonstration, split at its "Reasoning:" and
// "User Feedback:" markers.
struct Exemplar {
  std::string input;
  std::string reasoning;
  std::string feedback;

  bool operator==(const Exemplar&) const = default;
};

struct PromptBundle {
  VerbalLevel level = VerbalLevel::kNovice;
  std::string system;
  std::vector<Exemplar> exemplars;
  std::string query;
};

// Throws FormatError when a marker is missing. A leading "Example Input:"
// header is rewritten to "Input:" so exemplars and queries read alike.
Exemplar parse_exemplar(std::string_view text);

// Compilation-only combinations get the compilation exemplar; anything with
// execution results gets the execution exemplar. The query never carries the
// ground truth.
PromptBundle build_novice_prompt(const Problem& problem, std::string_view code,
                                 const CompilationFeedback& fc,
                                 const std::optional<ExecutionFeedback>& fe);

// Query embeds the description, ground truth, previous code and, when
// present, the execution block. Throws MissingGroundTruth.
PromptBundle build_expert_prompt(const Problem& problem, std::string_view code,
                                 const std::optional<ExecutionFeedback>& fe);

// System message, one user/assistant pair per exemplar, then the query.
std::vector<client::Message> to_messages(const PromptBundle& bundle);

// "```python\n<code>\n```"-style helper shared with the engines.
std::string python_block(std::string_view code);

}  // namespace convbench::feedback
