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

#include "convbench/client/cache.hpp"

#include <fstream>
#include <sstream>

#include "convbench/errors.hpp"
#include "convbench/io/codec.hpp"
#include "convbench/io/hash.hpp"

namespace convbench::client {

CachingClient::CachingClient(ChatClient* inner, std::filesystem::path directory, CacheMode mode)
    : inner_(inner), directory_(std::move(directory)), mode_(mode) {
  if (mode_ == CacheMode::kRecord && inner_ == nullptr) {
    throw std::invalid_argument("record mode needs an inner client");
  }
  std::filesystem::create_directories(directory_);
}

std::string CachingClient::canonical_request(const ChatRequest& request) {
  Json messages = Json::array();
  for (const auto& m : request.messages) {
    messages.push_back(Json{{"role", m.role}, {"content", m.content}});
  }
  const Json canonical{{"messages", std::move(messages)},
                       {"params",
                        {{"model_id", request.params.model_id},
                         {"temperature", request.params.temperature},
                         {"max_tokens", request.params.max_tokens}}}};
  return dump_line(canonical);
}

std::string CachingClient::request_key(const ChatRequest& request) {
  return sha256_hex(canonical_request(request));
}

std::optional<std::string> CachingClient::lookup(const ChatRequest& request) const {
  const auto path = directory_ / (request_key(request) + ".json");
  std::ifstream in(path);
  if (!in) return std::nullopt;
  try {
    const Json entry = Json::parse(in);
    if (entry.at("request").get<std::string>() != canonical_request(request)) return std::nullopt;
    return entry.at("completion").get<std::string>();
  } catch (const Json::exception&) {
    // A torn write from a killed recorder; treat as absent.
    return std::nullopt;
  }
}

void CachingClient::store(const ChatRequest& request, const std::string& completion) {
  const std::string key = request_key(request);
  const Json entry{{"request", canonical_request(request)}, {"completion", completion}};
  std::lock_guard lock(write_mutex_);
  const auto final_path = directory_ / (key + ".json");
  const auto temp_path = directory_ / (key + ".json.tmp");
  {
    std::ofstream out(temp_path, std::ios::binary | std::ios::trunc);
    out << entry.dump(1) << '\n';
    if (!out) throw ClientError("cannot write cache entry " + temp_path.string());
  }
  std::filesystem::rename(temp_path, final_path);
}

std::string CachingClient::complete(const ChatRequest& request) {
  if (auto hit = lookup(request)) return *hit;
  if (mode_ == CacheMode::kReplay) {
    throw CacheMiss("no recorded completion for request " + request_key(request) + " (task '" +
                    request.tags.task_id + "', turn " + std::to_string(request.tags.turn) + ")");
  }
  std::string completion = inner_->complete(request);
  store(request, completion);
  return completion;
}

}  // namespace convbench::client
