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

#include "convbench/metrics/table.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace convbench::metrics {

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string pad(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

}  // namespace

std::string format_percent(double percent) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", percent);
  return buf;
}

void ScoreTable::set(const std::string& model_id, const FeedbackCombination& omega, double percent) {
  if (!(percent >= 0.0 && percent <= 100.0)) {
    throw std::invalid_argument("score " + std::to_string(percent) + " outside [0, 100]");
  }
  if (std::find(models_.begin(), models_.end(), model_id) == models_.end()) models_.push_back(model_id);
  if (std::find(omegas_.begin(), omegas_.end(), omega) == omegas_.end()) omegas_.push_back(omega);
  cells_[{model_id, omega}] = percent;
}

std::optional<double> ScoreTable::get(const std::string& model_id,
                                      const FeedbackCombination& omega) const {
  const auto it = cells_.find({model_id, omega});
  if (it == cells_.end()) return std::nullopt;
  return it->second;
}

std::string ScoreTable::to_text() const {
  std::vector<std::vector<std::string>> grid;
  grid.push_back({"model"});
  for (const auto& o : omegas_) grid.front().push_back(to_string(o));
  for (const auto& m : models_) {
    std::vector<std::string> row{m};
    for (const auto& o : omegas_) {
      const auto v = get(m, o);
      row.push_back(v ? format_percent(*v) : "-");
    }
    grid.push_back(std::move(row));
  }
  std::vector<std::size_t> widths(grid.front().size(), 0);
  for (const auto& row : grid) {
    for (std::size_t c = 0; c < row.size(); ++c) widths[c] = std::max(widths[c], row[c].size());
  }
  std::ostringstream out;
  if (!title_.empty()) out << title_ << '\n';
  for (const auto& row : grid) {
    std::string line;
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c > 0) line += "  ";
      line += pad(row[c], widths[c]);
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out << line << '\n';
  }
  return out.str();
}

std::string ScoreTable::to_csv() const {
  std::ostringstream out;
  out << "model";
  for (const auto& o : omegas_) out << ',' << csv_field(to_string(o));
  out << '\n';
  for (const auto& m : models_) {
    out << csv_field(m);
    for (const auto& o : omegas_) {
      const auto v = get(m, o);
      out << ',' << (v ? format_percent(*v) : "");
    }
    out << '\n';
  }
  return out.str();
}

std::string ScoreTable::to_markdown() const {
  std::ostringstream out;
  if (!title_.empty()) out << "### " << title_ << "\n\n";
  out << "| model |";
  for (const auto& o : omegas_) out << " ⟨" << to_string(o) << "⟩ |";
  out << "\n|---|";
  for (std::size_t i = 0; i < omegas_.size(); ++i) out << "---:|";
  out << '\n';
  for (const auto& m : models_) {
    out << "| " << m << " |";
    for (const auto& o : omegas_) {
      const auto v = get(m, o);
      out << ' ' << (v ? format_percent(*v) : "-") << " |";
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace convbench::metrics
