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

namespace convbench::client {

// Body of the first fenced block tagged python/py/python3, else of the first
// fenced block of any kind. An unterminated final fence runs to the end of
// the text (completions cut off by the token limit). Throws NoCodeFound.
std::string extract_code(std::string_view completion);

// "```python\n" + source + "\n```". extract_code inverts it for any source
// without fence lines.
std::string wrap_in_fence(std::string_view source, std::string_view language = "python");

}  // namespace convbench::client
