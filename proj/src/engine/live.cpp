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

#include "convbench/engine/live.hpp"

#include <stdexcept>

#include "convbench/client/extract.hpp"
#include "convbench/errors.hpp"
#include "convbench/feedback/assets.hpp"
#include "convbench/feedback/format.hpp"
#include "convbench/feedback/prompts.hpp"
#include "convbench/feedback/simulate.hpp"

namespace convbench::engine {

namespace {

constexpr std::string_view kExtractionFailure =
    "No code block found in the response. Reply with the complete solution in a ```python "
    "markdown code block.";

std::string fill(std::string_view tmpl, std::string_view placeholder, std::string_view value) {
  std::string text(tmpl);
  while (!text.empty() && text.back() == '\n') text.pop_back();
  const auto at = text.find(placeholder);
  if (at == std::string::npos) throw std::logic_error("template lacks " + std::string(placeholder));
  text.replace(at, placeholder.size(), value);
  return text;
}

}  // namespace

std::size_t estimate_tokens(const std::vector<client::Message>& messages) {
  std::size_t chars = 0;
  for (const auto& m : messages) chars += m.content.size();
  return (chars + 3) / 4;
}

std::string render_feedback(const FeedbackBundle& feedback) {
  std::vector<std::string> parts;
  if (feedback.compilation) parts.push_back(feedback::format_compilation_block(*feedback.compilation));
  if (feedback.execution) {
    auto exec = feedback::format_execution_block(*feedback.execution);
    if (!exec.empty()) parts.push_back(std::move(exec));
  }
  if (feedback.verbal) parts.push_back("User Feedback:\n" + feedback.verbal->text);
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out += "\n\n";
    out += parts[i];
  }
  return out;
}

std::string initial_prompt(const Problem& problem) {
  return fill(assets::code_initial(), "{description}", problem.description);
}

std::string refine_prompt(const FeedbackBundle& feedback) {
  return fill(assets::code_refine(), "{feedback}", render_feedback(feedback));
}

std::vector<client::Message> build_conversation(const Problem& problem,
                                                const std::vector<std::string>& codes,
                                                const std::vector<FeedbackBundle>& feedbacks,
                                                std::size_t budget_tokens) {
  if (codes.size() != feedbacks.size()) {
    throw std::invalid_argument("build_conversation: one feedback per code expected");
  }
  std::vector<client::Message> head{{"user", initial_prompt(problem)}};
  std::vector<std::pair<client::Message, client::Message>> exchanges;
  for (std::size_t i = 0; i < codes.size(); ++i) {
    exchanges.push_back({{"assistant", client::wrap_in_fence(codes[i])},
                         {"user", refine_prompt(feedbacks[i])}});
  }
  std::size_t first = 0;
  const auto assemble = [&] {
    auto messages = head;
    for (std::size_t i = first; i < exchanges.size(); ++i) {
      messages.push_back(exchanges[i].first);
      messages.push_back(exchanges[i].second);
    }
    return messages;
  };
  auto messages = assemble();
  while (exchanges.size() - first > 1 && estimate_tokens(messages) > budget_tokens) {
    ++first;
    messages = assemble();
  }
  return messages;
}

LiveEngine::LiveEngine(client::ChatClient& code_client, client::ChatClient* feedback_client,
                       const sandbox::Sandbox& sandbox, EngineConfig config)
    : code_client_(code_client),
      feedback_client_(feedback_client),
      sandbox_(sandbox),
      config_(std::move(config)) {
  if (!config_.valid()) throw std::invalid_argument("invalid engine configuration");
}

Turn LiveEngine::generate(const Problem& problem, const std::vector<client::Message>& conversation,
                          const std::string& model_id, int index) const {
  auto params = config_.code_params;
  params.model_id = model_id;
  const std::string completion =
      code_client_.complete({conversation, params, {problem.task_id, index, client::Purpose::kCode}});
  Turn turn;
  turn.index = index;
  try {
    turn.code = client::extract_code(completion);
  } catch (const NoCodeFound& e) {
    turn.extraction_error = e.what();
    return turn;
  }
  turn.solved = sandbox_.grade(turn.code, problem.suite, config_.limits);
  return turn;
}

Turn LiveEngine::initial_generate(const Problem& problem, const std::string& model_id) const {
  return generate(problem, build_conversation(problem, {}, {}, config_.context_budget_tokens),
                  model_id, 0);
}

FeedbackBundle LiveEngine::collect_feedback(const Problem& problem, const FeedbackCombination& omega,
                                            std::string_view code,
                                            const std::optional<std::string>& extraction_error,
                                            int for_turn) const {
  FeedbackBundle fb;
  if (omega.is_baseline()) return fb;
  fb.compilation = extraction_error ? CompilationFeedback::failure(std::string(kExtractionFailure))
                                    : sandbox_.syntax_check(code);
  if (const auto coverage = omega.coverage()) {
    fb.execution = sandbox_.run_tests(code, problem.suite, *coverage, config_.limits);
  }
  if (omega.has_verbal()) {
    if (feedback_client_ == nullptr) {
      throw ClientError("verbal feedback requested but no feedback model is configured");
    }
    const auto bundle = omega.verbal == VerbalLevel::kExpert
                            ? feedback::build_expert_prompt(problem, code, fb.execution)
                            : feedback::build_novice_prompt(problem, code, *fb.compilation, fb.execution);
    fb.verbal = feedback::simulate_verbal(*feedback_client_, bundle, config_.feedback_params,
                                          {problem.task_id, for_turn, client::Purpose::kFeedback});
  }
  return fb;
}

Turn LiveEngine::step(const Problem& problem, const std::string& model_id,
                      const FeedbackCombination& omega, const std::vector<Turn>& history) const {
  if (history.empty()) throw std::invalid_argument("step needs the previous turn");
  if (history.back().solved) throw std::invalid_argument("step after a solved turn");
  if (omega.is_baseline()) throw std::invalid_argument("the baseline has no refinement turns");
  const Turn& prev = history.back();
  const int next = prev.index + 1;
  FeedbackBundle fb = collect_feedback(problem, omega, prev.code, prev.extraction_error, next);

  std::vector<std::string> codes;
  std::vector<FeedbackBundle> feedbacks;
  for (std::size_t i = 0; i < history.size(); ++i) {
    codes.push_back(history[i].code);
    feedbacks.push_back(i + 1 < history.size() ? history[i + 1].feedback : fb);
  }
  Turn turn = generate(problem, build_conversation(problem, codes, feedbacks, config_.context_budget_tokens),
                       model_id, next);
  turn.feedback = std::move(fb);
  return turn;
}

Trajectory LiveEngine::run_episode(const Problem& problem, const std::string& model_id,
                                   const FeedbackCombination& omega, const TurnSink& sink,
                                   const std::vector<Turn>& resume_from) const {
  if (!omega.is_valid()) throw std::invalid_argument("invalid feedback combination");
  Trajectory t;
  t.task_id = problem.task_id;
  t.model_id = model_id;
  t.omega = omega;
  t.max_turns = config_.max_turns;
  t.turns = resume_from;
  const auto record = [&](Turn turn) {
    if (sink) sink(turn);
    t.turns.push_back(std::move(turn));
  };
  if (t.turns.empty()) record(initial_generate(problem, model_id));
  const int last_index = omega.is_baseline() ? 0 : config_.max_turns;
  while (!t.turns.back().solved && t.turns.back().index < last_index) {
    record(step(problem, model_id, omega, t.turns));
  }
  t.first_success = compute_first_success(t.turns);
  t.terminal_feedback = terminal_feedback(problem, t);
  return t;
}

std::optional<FeedbackBundle> LiveEngine::terminal_feedback(const Problem& problem,
                                                            const Trajectory& trajectory) const {
  if (!config_.record_terminal_feedback || trajectory.omega.is_baseline() || trajectory.turns.empty() ||
      trajectory.turns.back().solved) {
    return std::nullopt;
  }
  const Turn& last = trajectory.turns.back();
  return collect_feedback(problem, trajectory.omega, last.code, last.extraction_error, last.index + 1);
}

}  // namespace convbench::engine
