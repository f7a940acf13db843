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

#include "convbench/client/chat.hpp"

namespace convbench::client {

std::vector<Message> fold_system_into_user(std::vector<Message> messages) {
  std::string system;
  std::vector<Message> out;
  for (auto& m : messages) {
    if (m.role == "system") {
      if (!system.empty()) system += "\n\n";
      system += m.content;
    } else {
      out.push_back(std::move(m));
    }
  }
  if (system.empty()) return out;
  for (auto& m : out) {
    if (m.role == "user") {
      m.content = system + "\n\n" + m.content;
      return out;
    }
  }
  out.insert(out.begin(), Message{"user", system});
  return out;
}

}  // namespace convbench::client
