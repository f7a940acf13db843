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

#include "convbench/client/extract.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <vector>

#include "convbench/errors.hpp"

namespace convbench::client {

namespace {

struct Block {
  std::string language;
  std::string body;
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (true) {
    const auto nl = text.find('\n', start);
    if (nl == std::string_view::npos) {
      lines.push_back(text.substr(start));
      return lines;
    }
    lines.push_back(text.substr(start, nl - start));
    start = nl + 1;
  }
}

// Language tag of an opening fence line, or nullopt if the line is not one.
std::optional<std::string> opening_fence(std::string_view line) {
  const auto t = trim(line);
  if (t.substr(0, 3) != "```") return std::nullopt;
  auto info = trim(t.substr(3));
  const auto space = info.find_first_of(" \t{");
  if (space != std::string_view::npos) info = info.substr(0, space);
  std::string language(info);
  std::transform(language.begin(), language.end(), language.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return language;
}

bool closing_fence(std::string_view line) { return trim(line) == "```"; }

std::vector<Block> find_blocks(std::string_view text) {
  const auto lines = split_lines(text);
  std::vector<Block> blocks;
  std::size_t i = 0;
  while (i < lines.size()) {
    auto language = opening_fence(lines[i]);
    if (!language) {
      ++i;
      continue;
    }
    Block block{std::move(*language), {}};
    std::size_t j = i + 1;
    for (; j < lines.size() && !closing_fence(lines[j]); ++j) {
      if (j > i + 1) block.body += '\n';
      block.body += lines[j];
    }
    blocks.push_back(std::move(block));
    i = j + 1;
  }
  return blocks;
}

bool is_python(const std::string& language) {
  return language == "python" || language == "py" || language == "python3";
}

}  // namespace

std::string extract_code(std::string_view completion) {
  const auto blocks = find_blocks(completion);
  if (blocks.empty()) throw NoCodeFound("no fenced code block in completion");
  for (const auto& b : blocks) {
    if (is_python(b.language)) return b.body;
  }
  return blocks.front().body;
}

std::string wrap_in_fence(std::string_view source, std::string_view language) {
  std::string out = "```";
  out += language;
  out += '\n';
  out += source;
  out += "\n```";
  return out;
}

}  // namespace convbench::client
