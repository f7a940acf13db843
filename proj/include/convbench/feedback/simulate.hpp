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

#include <string>
#include <string_view>
#include <vector>

#include "convbench/client/chat.hpp"
#include "convbench/feedback/prompts.hpp"
#include "convbench/types.hpp"

namespace convbench::feedback {

// Text after the first "User Feedback:" marker, trimmed; the whole trimmed
// completion when there is no marker.
std::string strip_reasoning(std::string_view completion);

// Queries the simulator model. `params` should come from
// ChatParams::for_feedback. Throws ClientError, EmptyCompletion.
VerbalFeedback simulate_verbal(client::ChatClient& client, const PromptBundle& bundle,
                               const client::ChatParams& params,
                               client::RequestTags tags = {});

// Case-insensitive; '_' and whitespace runs both count as a single space.
inline constexpr std::string_view kCanary = "ground truth code";

LeakageFlags detect_leakage(std::string_view text);

// True iff some fence line is followed later by a closing fence line.
bool contains_fenced_block(std::string_view text);

struct LeakageRates {
  double mention_rate = 0.0;     // percent
  double code_block_rate = 0.0;  // percent
  std::size_t instances = 0;
};

// Over every expert verbal feedback in the trajectories, terminal feedback
// included. Flags are recomputed from the text, not trusted from the log.
// Throws NoExpertFeedback when there is none.
LeakageRates leakage_audit(const std::vector<Trajectory>& trajectories);

}  // namespace convbench::feedback
