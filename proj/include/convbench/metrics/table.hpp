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

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "convbench/types.hpp"

namespace convbench::metrics {

// Models x combinations grid of percentages, printed with one decimal.
// Rows and columns keep insertion order; missing cells render as "-".
class ScoreTable {
 public:
  explicit ScoreTable(std::string title = {}) : title_(std::move(title)) {}

  // Throws std::invalid_argument outside [0, 100].
  void set(const std::string& model_id, const FeedbackCombination& omega, double percent);
  std::optional<double> get(const std::string& model_id, const FeedbackCombination& omega) const;

  const std::string& title() const noexcept { return title_; }
  const std::vector<std::string>& models() const noexcept { return models_; }
  const std::vector<FeedbackCombination>& combinations() const noexcept { return omegas_; }

  std::string to_text() const;
  std::string to_csv() const;
  std::string to_markdown() const;

 private:
  std::string title_;
  std::vector<std::string> models_;
  std::vector<FeedbackCombination> omegas_;
  std::map<std::pair<std::string, FeedbackCombination>, double> cells_;
};

// "46.0"
std::string format_percent(double percent);

}  // namespace convbench::metrics
