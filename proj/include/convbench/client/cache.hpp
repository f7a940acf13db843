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

#include <filesystem>
#include <mutex>
#include <optional>
#include <string>

#include "convbench/client/chat.hpp"

namespace convbench::client {

enum class CacheMode {
  kRecord,  // serve hits, forward misses to the inner client and store them
  kReplay,  // serve hits, fail misses with CacheMiss
};

// Disk-backed record/replay wrapper. One file per request, named by the
// SHA-256 of the canonicalised (messages, params) pair; tags are not part of
// the key.
class CachingClient final : public ChatClient {
 public:
  // `inner` may be null in replay mode. It must outlive this object.
  CachingClient(ChatClient* inner, std::filesystem::path directory, CacheMode mode);

  std::string complete(const ChatRequest& request) override;

  static std::string canonical_request(const ChatRequest& request);
  static std::string request_key(const ChatRequest& request);

  std::optional<std::string> lookup(const ChatRequest& request) const;
  const std::filesystem::path& directory() const noexcept { return directory_; }

 private:
  void store(const ChatRequest& request, const std::string& completion);

  ChatClient* inner_;
  std::filesystem::path directory_;
  CacheMode mode_;
  std::mutex write_mutex_;
};

}  // namespace convbench::client
