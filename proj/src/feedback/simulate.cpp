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

#include "convbench/feedback/simulate.hpp"

#include <cctype>

#include "convbench/errors.hpp"

namespace convbench::feedback {

namespace {

constexpr std::string_view kFeedbackMarker = "User Feedback:";

std::string trimmed(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

std::string normalise(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (const char ch : text) {
    const auto c = static_cast<unsigned char>(ch);
    if (c == '_' || std::isspace(c)) {
      pending_space = true;
      continue;
    }
    if (pending_space && !out.empty()) out += ' ';
    pending_space = false;
    out += static_cast<char>(std::tolower(c));
  }
  return out;
}

bool is_fence(std::string_view line) {
  const auto first = line.find_first_not_of(" \t");
  return first != std::string_view::npos && line.substr(first, 3) == "```";
}

}  // namespace

std::string strip_reasoning(std::string_view completion) {
  const auto at = completion.find(kFeedbackMarker);
  if (at == std::string_view::npos) return trimmed(completion);
  return trimmed(completion.substr(at + kFeedbackMarker.size()));
}

bool contains_fenced_block(std::string_view text) {
  int fences = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    if (is_fence(text.substr(start, end - start)) && ++fences == 2) return true;
    start = end + 1;
  }
  return false;
}

LeakageFlags detect_leakage(std::string_view text) {
  LeakageFlags flags;
  flags.mentions_ground_truth = normalise(text).find(kCanary) != std::string::npos;
  flags.contains_code_block = contains_fenced_block(text);
  return flags;
}

VerbalFeedback simulate_verbal(client::ChatClient& client, const PromptBundle& bundle,
                               const client::ChatParams& params, client::RequestTags tags) {
  tags.purpose = client::Purpose::kFeedback;
  const std::string completion = client.complete({to_messages(bundle), params, std::move(tags)});
  VerbalFeedback verbal;
  verbal.level = bundle.level;
  verbal.text = strip_reasoning(completion);
  if (verbal.text.empty()) throw EmptyCompletion("feedback simulator returned no feedback text");
  verbal.leakage = detect_leakage(verbal.text);
  return verbal;
}

LeakageRates leakage_audit(const std::vector<Trajectory>& trajectories) {
  std::size_t instances = 0, mentions = 0, blocks = 0;
  const auto visit = [&](const FeedbackBundle& fb) {
    if (!fb.verbal || fb.verbal->level != VerbalLevel::kExpert) return;
    const auto flags = detect_leakage(fb.verbal->text);
    ++instances;
    mentions += flags.mentions_ground_truth;
    blocks += flags.contains_code_block;
  };
  for (const auto& t : trajectories) {
    for (const auto& turn : t.turns) visit(turn.feedback);
    if (t.terminal_feedback) visit(*t.terminal_feedback);
  }
  if (instances == 0) throw NoExpertFeedback("no expert verbal feedback in the given trajectories");
  LeakageRates rates;
  rates.instances = instances;
  rates.mention_rate = 100.0 * static_cast<double>(mentions) / static_cast<double>(instances);
  rates.code_block_rate = 100.0 * static_cast<double>(blocks) / static_cast<double>(instances);
  return rates;
}

}  // namespace convbench::feedback
