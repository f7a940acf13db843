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

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "convbench/client/chat.hpp"
#include "convbench/sandbox/sandbox.hpp"
#include "convbench/types.hpp"

namespace convbench::engine {

inline constexpr std::size_t kDefaultContextBudget = 8192;

struct EngineConfig {
  int max_turns = kDefaultMaxTurns;
  // model_id is filled in per episode.
  client::ChatParams code_params = client::ChatParams::for_code("");
  client::ChatParams feedback_params = client::ChatParams::for_feedback("gpt-4o");
  sandbox::RunLimits limits;
  // Estimated prompt tokens (characters / 4) kept in refinement requests.
  std::size_t context_budget_tokens = kDefaultContextBudget;
  // Collect feedback on the last code of an unsolved episode so static
  // benchmarks can offer it for refinement.
  bool record_terminal_feedback = true;

  bool valid() const noexcept { return max_turns >= 0 && limits.valid() && context_budget_tokens > 0; }
};

// Rough prompt size used by the context budget.
std::size_t estimate_tokens(const std::vector<client::Message>& messages);

// The text a code model sees after a version of its code: compilation block,
// execution block, then "User Feedback:\n<verbal>", whichever are present.
std::string render_feedback(const FeedbackBundle& feedback);

std::string initial_prompt(const Problem& problem);
std::string refine_prompt(const FeedbackBundle& feedback);

// Conversation for generating turn `codes.size()`: the initial prompt, then
// each earlier code as an assistant message followed by the feedback on it.
// feedbacks[i] is the feedback shown after codes[i]; both lists have the
// same length. Oldest exchanges are dropped first when over budget, but the
// initial prompt and the latest exchange always stay.
std::vector<client::Message> build_conversation(const Problem& problem,
                                                const std::vector<std::string>& codes,
                                                const std::vector<FeedbackBundle>& feedbacks,
                                                std::size_t budget_tokens);

// Feeds every recorded turn to the journal as soon as it exists.
using TurnSink = std::function<void(const Turn&)>;

class LiveEngine {
 public:
  // `feedback_client` may be null when no combination uses verbal feedback.
  // All references must outlive the engine. Safe to share across threads if
  // the clients and sandbox are.
  LiveEngine(client::ChatClient& code_client, client::ChatClient* feedback_client,
             const sandbox::Sandbox& sandbox, EngineConfig config);

  const EngineConfig& config() const noexcept { return config_; }

  Turn initial_generate(const Problem& problem, const std::string& model_id) const;

  // Feedback on `code` under `omega`. `for_turn` tags the simulator request
  // with the turn the feedback will precede.
  FeedbackBundle collect_feedback(const Problem& problem, const FeedbackCombination& omega,
                                  std::string_view code,
                                  const std::optional<std::string>& extraction_error,
                                  int for_turn) const;

  // Generates the turn after history.back(), which must be unsolved.
  Turn step(const Problem& problem, const std::string& model_id, const FeedbackCombination& omega,
            const std::vector<Turn>& history) const;

  // Runs (or, given `resume_from`, continues) one episode. Turns already in
  // `resume_from` are not regenerated and not passed to `sink`.
  Trajectory run_episode(const Problem& problem, const std::string& model_id,
                         const FeedbackCombination& omega, const TurnSink& sink = {},
                         const std::vector<Turn>& resume_from = {}) const;

  // Terminal feedback for an episode that ended unsolved, if configured.
  std::optional<FeedbackBundle> terminal_feedback(const Problem& problem,
                                                  const Trajectory& trajectory) const;

  // The code model's answer to `conversation`: extracted code or the
  // extraction failure, plus the full-suite verdict.
  Turn generate(const Problem& problem, const std::vector<client::Message>& conversation,
                const std::string& model_id, int index) const;

 private:
  client::ChatClient& code_client_;
  client::ChatClient* feedback_client_;
  const sandbox::Sandbox& sandbox_;
  EngineConfig config_;
};

}  // namespace convbench::engine
