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

#include <chrono>
#include <functional>
#include <map>
#include <memory>
#include <semaphore>
#include <string>
#include <thread>

#include "convbench/client/chat.hpp"

namespace convbench::client {

struct HttpClientOptions {
  // Scheme, host and optional port, e.g. "https://api.openai.com".
  std::string base_url = "https://api.openai.com";
  std::string path = "/v1/chat/completions";
  // Name of the environment variable holding the bearer token. An unset or
  // empty variable sends no Authorization header.
  std::string api_key_env = "OPENAI_API_KEY";
  int max_in_flight = 4;
  int max_attempts = 5;
  double initial_backoff_s = 1.0;
  double max_backoff_s = 60.0;
  double timeout_s = 300.0;
  // Keyed by model id.
  std::map<std::string, MessageShaper> shapers;
  // Replaced in tests to avoid real sleeping.
  std::function<void(double)> sleep = [](double seconds) {
    std::this_thread::sleep_for(std::chrono::duration<double>(seconds));
  };
};

// Chat-completions endpoint over HTTP(S). 429 and 5xx responses and
// transport failures are retried with exponential backoff; once attempts
// run out a 429 surfaces as RateLimited and the rest as TransportError.
class HttpChatClient final : public ChatClient {
 public:
  explicit HttpChatClient(HttpClientOptions options);
  ~HttpChatClient() override;

  std::string complete(const ChatRequest& request) override;

  // Request body as sent on the wire, after shaping.
  std::string request_body(const ChatRequest& request) const;
  // Extracts choices[0].message.content. Throws ClientError.
  static std::string parse_response(const std::string& body);

 private:
  HttpClientOptions options_;
  std::string api_key_;
  std::unique_ptr<std::counting_semaphore<1024>> in_flight_;
};

}  // namespace convbench::client
