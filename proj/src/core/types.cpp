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

#include "convbench/types.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <stdexcept>

namespace convbench {

std::optional<Coverage> FeedbackCombination::coverage() const noexcept {
  switch (execution) {
    case ExecutionLevel::kPartial:
      return Coverage::kPartial;
    case ExecutionLevel::kFull:
      return Coverage::kFull;
    case ExecutionLevel::kNone:
      break;
  }
  return std::nullopt;
}

std::vector<FeedbackCombination> enumerate_combinations() {
  std::vector<FeedbackCombination> out;
  out.push_back({});
  for (VerbalLevel verbal : {VerbalLevel::kNone, VerbalLevel::kNovice, VerbalLevel::kExpert}) {
    for (ExecutionLevel execution :
         {ExecutionLevel::kNone, ExecutionLevel::kPartial, ExecutionLevel::kFull}) {
      out.push_back({true, execution, verbal});
    }
  }
  return out;
}

namespace {

std::string_view execution_token(ExecutionLevel level) {
  switch (level) {
    case ExecutionLevel::kPartial:
      return "fe";
    case ExecutionLevel::kFull:
      return "fe*";
    case ExecutionLevel::kNone:
      break;
  }
  return "phi";
}

std::string_view verbal_token(VerbalLevel level) {
  switch (level) {
    case VerbalLevel::kNovice:
      return "fv";
    case VerbalLevel::kExpert:
      return "fv*";
    case VerbalLevel::kNone:
      break;
  }
  return "phi";
}

std::string trim_copy(std::string_view s) {
  auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string_view::npos) return {};
  auto end = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(begin, end - begin + 1));
}

std::string lower_copy(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

}  // namespace

std::string to_string(const FeedbackCombination& omega) {
  std::string out(omega.compilation ? "fc" : "phi");
  out += ',';
  out += execution_token(omega.execution);
  out += ',';
  out += verbal_token(omega.verbal);
  return out;
}

std::string to_slug(const FeedbackCombination& omega) {
  std::string out;
  for (char c : to_string(omega)) {
    if (c == ',') {
      out += '_';
    } else if (c == '*') {
      out += "star";
    } else {
      out += c;
    }
  }
  return out;
}

FeedbackCombination parse_combination(std::string_view text) {
  const std::string whole = lower_copy(trim_copy(text));
  if (whole.empty() || whole == "none" || whole == "baseline" || whole == "phi") return {};

  std::vector<std::string> tokens;
  std::size_t start = 0;
  while (true) {
    auto comma = whole.find(',', start);
    tokens.push_back(trim_copy(std::string_view(whole).substr(
        start, comma == std::string::npos ? std::string::npos : comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }

  auto is_phi = [](const std::string& t) { return t == "phi" || t == "\xcf\x86"; };
  FeedbackCombination omega;
  bool seen_e = false, seen_v = false;
  if (tokens.size() > 3) throw std::invalid_argument("too many channels in '" + whole + "'");
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const auto& token = tokens[i];
    // A phi is only meaningful as a positional placeholder in the 3-slot form.
    if (is_phi(token) && tokens.size() == 3) continue;
    if (token == "fc" && !omega.compilation && (tokens.size() != 3 || i == 0)) {
      omega.compilation = true;
    } else if ((token == "fe" || token == "fe*") && !seen_e && (tokens.size() != 3 || i == 1)) {
      seen_e = true;
      omega.execution = token == "fe" ? ExecutionLevel::kPartial : ExecutionLevel::kFull;
    } else if ((token == "fv" || token == "fv*") && !seen_v && (tokens.size() != 3 || i == 2)) {
      seen_v = true;
      omega.verbal = token == "fv" ? VerbalLevel::kNovice : VerbalLevel::kExpert;
    } else {
      throw std::invalid_argument("unexpected feedback channel '" + token + "' in '" + whole + "'");
    }
  }
  if (!omega.is_valid()) {
    throw std::invalid_argument("'" + whole + "': execution/verbal feedback requires fc");
  }
  return omega;
}

std::string_view to_string(CaseStatus status) noexcept {
  switch (status) {
    case CaseStatus::kPass:
      return "pass";
    case CaseStatus::kFail:
      return "fail";
    case CaseStatus::kError:
      return "error";
    case CaseStatus::kTimeout:
      return "timeout";
  }
  return "error";
}

CaseStatus parse_case_status(std::string_view text) {
  static constexpr std::array kAll = {CaseStatus::kPass, CaseStatus::kFail, CaseStatus::kError,
                                      CaseStatus::kTimeout};
  for (auto status : kAll) {
    if (to_string(status) == text) return status;
  }
  throw std::invalid_argument("unknown case status '" + std::string(text) + "'");
}

std::string_view to_string(Coverage coverage) noexcept {
  return coverage == Coverage::kPartial ? "partial" : "full";
}

std::string_view to_string(VerbalLevel level) noexcept {
  switch (level) {
    case VerbalLevel::kNovice:
      return "novice";
    case VerbalLevel::kExpert:
      return "expert";
    case VerbalLevel::kNone:
      break;
  }
  return "none";
}

bool ExecutionFeedback::all_passed() const noexcept {
  return std::all_of(results.begin(), results.end(),
                     [](const CaseResult& r) { return r.status == CaseStatus::kPass; });
}

std::optional<int> compute_first_success(const std::vector<Turn>& turns) {
  for (std::size_t i = 0; i < turns.size(); ++i) {
    if (turns[i].solved) return static_cast<int>(i) + 1;
  }
  return std::nullopt;
}

std::vector<std::string> check_trajectory(const Trajectory& t) {
  std::vector<std::string> issues;
  if (!t.omega.is_valid()) issues.push_back("invalid feedback combination");
  if (t.max_turns < 0) issues.push_back("negative max_turns");
  if (t.turns.empty()) issues.push_back("no turns");
  if (static_cast<int>(t.turns.size()) > t.max_turns + 1) issues.push_back("too many turns");
  if (t.omega.is_baseline() && t.turns.size() > 1) issues.push_back("baseline with refinement turns");

  for (std::size_t i = 0; i < t.turns.size(); ++i) {
    const Turn& turn = t.turns[i];
    const std::string where = "turn " + std::to_string(i) + ": ";
    if (turn.index != static_cast<int>(i)) issues.push_back(where + "non-contiguous index");
    if (turn.solved && i + 1 != t.turns.size()) issues.push_back(where + "solved but not last");

    const FeedbackBundle& fb = turn.feedback;
    if (i == 0) {
      if (!fb.empty()) issues.push_back(where + "initial generation carries feedback");
      continue;
    }
    if (fb.compilation.has_value() != t.omega.compilation) {
      issues.push_back(where + "compilation feedback does not match combination");
    }
    if (fb.execution.has_value() != t.omega.has_execution() ||
        (fb.execution && fb.execution->coverage != t.omega.coverage())) {
      issues.push_back(where + "execution feedback does not match combination");
    }
    if (fb.verbal.has_value() != t.omega.has_verbal() ||
        (fb.verbal && fb.verbal->level != t.omega.verbal)) {
      issues.push_back(where + "verbal feedback does not match combination");
    }
    if (fb.verbal && fb.verbal->text.empty()) issues.push_back(where + "empty verbal feedback");
  }

  if (t.first_success != compute_first_success(t.turns)) {
    issues.push_back("first_success disagrees with turn verdicts");
  }
  const bool exhausted = static_cast<int>(t.turns.size()) == t.max_turns + 1 ||
                         t.omega.is_baseline();
  if (!t.turns.empty() && !t.turns.back().solved && !exhausted) {
    issues.push_back("unsolved episode stopped before max_turns");
  }
  if (t.terminal_feedback && (t.turns.empty() || t.turns.back().solved)) {
    issues.push_back("terminal feedback on a solved episode");
  }
  return issues;
}

std::vector<std::string> selected_cases(const TestSuite& suite, Coverage coverage) {
  std::size_t count = suite.case_names.size();
  if (coverage == Coverage::kPartial) count = std::min(count, kPartialCaseCount);
  return {suite.case_names.begin(), suite.case_names.begin() + static_cast<std::ptrdiff_t>(count)};
}

}  // namespace convbench
