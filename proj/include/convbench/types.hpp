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

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace convbench {

// Compilation success message shown to models and simulators.
inline constexpr std::string_view kNoSyntaxErrors = "No syntax errors";

// Partial test coverage exposes this many leading cases of a suite.
inline constexpr std::size_t kPartialCaseCount = 3;

inline constexpr int kDefaultMaxTurns = 10;

struct TestSuite {
  std::string code;
  // Order is significant: partial coverage takes a prefix.
  std::vector<std::string> case_names;

  bool operator==(const TestSuite&) const = default;
};

struct Problem {
  std::string task_id;
  std::string description;
  std::string ground_truth;
  TestSuite suite;
  std::string entry_point;

  bool operator==(const Problem&) const = default;
};

enum class ExecutionLevel { kNone, kPartial, kFull };
enum class VerbalLevel { kNone, kNovice, kExpert };
enum class Coverage { kPartial, kFull };

// Which feedback channels the environment returns on every refinement turn.
// With compilation off the combination is the single-turn baseline and the
// other two channels must be off as well.
struct FeedbackCombination {
  bool compilation = false;
  ExecutionLevel execution = ExecutionLevel::kNone;
  VerbalLevel verbal = VerbalLevel::kNone;

  bool is_baseline() const noexcept { return !compilation; }
  bool is_valid() const noexcept {
    return compilation ||
           (execution == ExecutionLevel::kNone && verbal == VerbalLevel::kNone);
  }
  bool has_execution() const noexcept { return execution != ExecutionLevel::kNone; }
  bool has_verbal() const noexcept { return verbal != VerbalLevel::kNone; }
  std::optional<Coverage> coverage() const noexcept;

  auto operator<=>(const FeedbackCombination&) const = default;
};

// The baseline followed by the nine multi-turn combinations, execution
// varying fastest, in leaderboard column order.
std::vector<FeedbackCombination> enumerate_combinations();

// "fc,fe*,fv" style. Baseline renders as "phi,phi,phi".
std::string to_string(const FeedbackCombination& omega);
// Filesystem-safe rendering, e.g. "fc_festar_fv".
std::string to_slug(const FeedbackCombination& omega);
// Accepts the canonical form, omitted channels ("fc,fv*"), "phi"/"φ" for an
// empty channel, and "none"/"baseline" for the baseline. Throws
// std::invalid_argument on anything else or on an invalid combination.
FeedbackCombination parse_combination(std::string_view text);

enum class CaseStatus { kPass, kFail, kError, kTimeout };

std::string_view to_string(CaseStatus status) noexcept;
CaseStatus parse_case_status(std::string_view text);  // std::invalid_argument
std::string_view to_string(Coverage coverage) noexcept;
std::string_view to_string(VerbalLevel level) noexcept;

struct CaseResult {
  std::string case_name;
  CaseStatus status = CaseStatus::kPass;
  std::string detail;

  bool operator==(const CaseResult&) const = default;
};

struct CompilationFeedback {
  bool ok = true;
  std::string message{kNoSyntaxErrors};

  static CompilationFeedback success() { return {}; }
  static CompilationFeedback failure(std::string diagnostic) {
    return {false, std::move(diagnostic)};
  }
  bool operator==(const CompilationFeedback&) const = default;
};

struct ExecutionFeedback {
  Coverage coverage = Coverage::kFull;
  std::vector<CaseResult> results;

  bool all_passed() const noexcept;
  bool operator==(const ExecutionFeedback&) const = default;
};

struct LeakageFlags {
  bool mentions_ground_truth = false;
  bool contains_code_block = false;

  bool operator==(const LeakageFlags&) const = default;
};

struct VerbalFeedback {
  VerbalLevel level = VerbalLevel::kNovice;
  std::string text;
  LeakageFlags leakage;

  bool operator==(const VerbalFeedback&) const = default;
};

// Everything the environment said about one version of the code.
struct FeedbackBundle {
  std::optional<CompilationFeedback> compilation;
  std::optional<ExecutionFeedback> execution;
  std::optional<VerbalFeedback> verbal;

  bool empty() const noexcept { return !compilation && !execution && !verbal; }
  bool operator==(const FeedbackBundle&) const = default;
};

// One version of the code. `feedback` is what the model was shown before
// writing this version, so turn 0 (the initial generation) carries none.
struct Turn {
  int index = 0;
  std::string code;
  FeedbackBundle feedback;
  // Graded against the full suite regardless of visible coverage.
  bool solved = false;
  // Set when no code block could be recovered from the completion.
  std::optional<std::string> extraction_error;

  bool operator==(const Turn&) const = default;
};

struct Trajectory {
  std::string task_id;
  std::string model_id;
  FeedbackCombination omega;
  std::vector<Turn> turns;
  // 1-based position of the first solved turn; turn 0 is position 1.
  std::optional<int> first_success;
  int max_turns = kDefaultMaxTurns;
  // Feedback on the last code of an episode that ran out of turns unsolved.
  // Static benchmarks need it to offer that code for refinement.
  std::optional<FeedbackBundle> terminal_feedback;

  bool operator==(const Trajectory&) const = default;
};

std::optional<int> compute_first_success(const std::vector<Turn>& turns);

// Empty when every Turn/Trajectory invariant holds.
std::vector<std::string> check_trajectory(const Trajectory& trajectory);

// Cases a run at `coverage` executes, in suite order.
std::vector<std::string> selected_cases(const TestSuite& suite, Coverage coverage);

}  // namespace convbench
