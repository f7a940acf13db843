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
#include <string>
#include <vector>

namespace convbench::client {

inline constexpr int kCodeMaxTokens = 8192;
inline constexpr int kFeedbackMaxTokens = 2048;

struct Message {
  std::string role;  // "system" | "user" | "assistant"
  std::string content;

  bool operator==(const Message&) const = default;
};

// Greedy decoding by default. Code generation gets 8K tokens, feedback
// simulation 2K.
struct ChatParams {
  std::string model_id;
  double temperature = 0.0;
  int max_tokens = kCodeMaxTokens;

  static ChatParams for_code(std::string model_id) { return {std::move(model_id), 0.0, kCodeMaxTokens}; }
  static ChatParams for_feedback(std::string model_id) {
    return {std::move(model_id), 0.0, kFeedbackMaxTokens};
  }
  bool operator==(const ChatParams&) const = default;
};

enum class Purpose { kCode, kFeedback };

// Bookkeeping that travels with a request but never reaches the endpoint
// or the cache key. Scripted clients key on it.
struct RequestTags {
  std::string task_id;
  int turn = 0;
  Purpose purpose = Purpose::kCode;
};

struct ChatRequest {
  std::vector<Message> messages;
  ChatParams params;
  RequestTags tags;
};

// A chat-completion endpoint. Implementations must be safe to share across
// threads.
class ChatClient {
 public:
  virtual ~ChatClient() = default;
  // Throws ClientError (or a subclass) on failure.
  virtual std::string complete(const ChatRequest& request) = 0;
};

// Per-model adjustment of the message list before it goes on the wire.
using MessageShaper = std::function<std::vector<Message>(std::vector<Message>)>;

// For endpoints without system-prompt support: folds system messages into
// the first user message.
std::vector<Message> fold_system_into_user(std::vector<Message> messages);

}  // namespace convbench::client
