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

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include "convbench/client/http_client.hpp"

#include <httplib.h>

#include <algorithm>
#include <cstdlib>

#include "convbench/errors.hpp"
#include "convbench/io/codec.hpp"

namespace convbench::client {

namespace {

bool retryable(int status) { return status == 429 || status >= 500; }

std::string excerpt(const std::string& body) {
  constexpr std::size_t kMax = 300;
  return body.size() <= kMax ? body : body.substr(0, kMax) + "...";
}

}  // namespace

HttpChatClient::HttpChatClient(HttpClientOptions options) : options_(std::move(options)) {
  if (options_.max_in_flight < 1 || options_.max_in_flight > 1024) {
    throw std::invalid_argument("max_in_flight must be in [1, 1024]");
  }
  if (options_.max_attempts < 1) throw std::invalid_argument("max_attempts must be >= 1");
  if (!options_.api_key_env.empty()) {
    if (const char* key = std::getenv(options_.api_key_env.c_str())) api_key_ = key;
  }
  in_flight_ = std::make_unique<std::counting_semaphore<1024>>(options_.max_in_flight);
}

HttpChatClient::~HttpChatClient() = default;

std::string HttpChatClient::request_body(const ChatRequest& request) const {
  auto messages = request.messages;
  if (auto it = options_.shapers.find(request.params.model_id); it != options_.shapers.end()) {
    messages = it->second(std::move(messages));
  }
  Json wire = Json::array();
  for (const auto& m : messages) wire.push_back(Json{{"role", m.role}, {"content", m.content}});
  const Json body{{"model", request.params.model_id},
                  {"messages", std::move(wire)},
                  {"temperature", request.params.temperature},
                  {"max_tokens", request.params.max_tokens}};
  return body.dump();
}

std::string HttpChatClient::parse_response(const std::string& body) {
  try {
    const Json j = Json::parse(body);
    const auto& content = j.at("choices").at(0).at("message").at("content");
    return content.is_null() ? std::string() : content.get<std::string>();
  } catch (const Json::exception& e) {
    throw ClientError(std::string("malformed completion response: ") + e.what());
  }
}

std::string HttpChatClient::complete(const ChatRequest& request) {
  if (request.messages.empty()) throw std::invalid_argument("complete() needs at least one message");
  const std::string body = request_body(request);

  httplib::Headers headers;
  if (!api_key_.empty()) headers.emplace("Authorization", "Bearer " + api_key_);

  double backoff = options_.initial_backoff_s;
  for (int attempt = 1;; ++attempt) {
    int status = 0;
    std::string detail;
    {
      in_flight_->acquire();
      struct Release {
        std::counting_semaphore<1024>* s;
        ~Release() { s->release(); }
      } release{in_flight_.get()};

      httplib::Client http(options_.base_url);
      const auto whole = std::chrono::duration<double>(options_.timeout_s);
      http.set_connection_timeout(std::chrono::duration_cast<std::chrono::microseconds>(whole));
      http.set_read_timeout(std::chrono::duration_cast<std::chrono::microseconds>(whole));
      http.set_write_timeout(std::chrono::duration_cast<std::chrono::microseconds>(whole));

      auto res = http.Post(options_.path, headers, body, "application/json");
      if (!res) {
        detail = "transport failure: " + httplib::to_string(res.error());
      } else if (res->status == 200) {
        return parse_response(res->body);
      } else {
        status = res->status;
        detail = "HTTP " + std::to_string(status) + ": " + excerpt(res->body);
        if (!retryable(status)) throw ClientError(detail);
      }
    }
    if (attempt >= options_.max_attempts) {
      if (status == 429) throw RateLimited(detail, attempt, backoff);
      throw TransportError(detail + " (after " + std::to_string(attempt) + " attempts)");
    }
    options_.sleep(backoff);
    backoff = std::min(backoff * 2.0, options_.max_backoff_s);
  }
}

}  // namespace convbench::client
