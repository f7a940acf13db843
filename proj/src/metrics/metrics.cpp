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

#include "convbench/metrics/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "convbench/errors.hpp"

namespace convbench::metrics {

namespace {

void require_non_negative(double v, const char* name) {
  if (!(v >= 0.0)) throw std::invalid_argument(std::string(name) + " must be non-negative");
}

}  // namespace

double reciprocal_rank(std::optional<int> first_success) {
  if (!first_success || *first_success < 1) return 0.0;
  return 1.0 / static_cast<double>(*first_success);
}

double mrr(const Trajectory& trajectory) { return reciprocal_rank(trajectory.first_success); }

double recall(const Trajectory& trajectory) { return trajectory.first_success ? 1.0 : 0.0; }

Aggregate aggregate(const std::vector<Trajectory>& trajectories) {
  Aggregate a;
  a.problems = trajectories.size();
  if (trajectories.empty()) return a;
  for (const auto& t : trajectories) {
    a.mrr += mrr(t);
    a.recall += recall(t);
  }
  const auto n = static_cast<double>(trajectories.size());
  a.mrr = 100.0 * a.mrr / n;
  a.recall = 100.0 * a.recall / n;
  return a;
}

std::vector<double> pass_at_1_curve(const std::vector<Trajectory>& trajectories) {
  if (trajectories.empty()) return {};
  const int n = trajectories.front().max_turns;
  for (const auto& t : trajectories) {
    if (t.max_turns != n) throw std::invalid_argument("trajectories disagree on max_turns");
  }
  std::vector<double> curve(static_cast<std::size_t>(n) + 1, 0.0);
  for (const auto& t : trajectories) {
    if (!t.first_success) continue;
    for (int turn = *t.first_success - 1; turn <= n; ++turn) curve[static_cast<std::size_t>(turn)] += 1.0;
  }
  const auto count = static_cast<double>(trajectories.size());
  for (auto& v : curve) v = 100.0 * v / count;
  return curve;
}

std::vector<double> average_ranks(const std::vector<double>& values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(values.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) ++j;
    // Positions i..j (0-based) share rank mean(i+1..j+1).
    const double rank = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
    i = j + 1;
  }
  return ranks;
}

double pearson(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size()) throw std::invalid_argument("pearson: inputs differ in length");
  if (xs.size() < 2) throw std::invalid_argument("pearson: need at least two pairs");
  const auto n = static_cast<double>(xs.size());
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = xs[i] - mx;
    const double dy = ys[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) throw DegenerateInput("correlation undefined: an input has zero variance");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

double spearman(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size()) throw std::invalid_argument("spearman: inputs differ in length");
  if (xs.size() < 2) throw std::invalid_argument("spearman: need at least two pairs");
  return pearson(average_ranks(xs), average_ranks(ys));
}

double cost_estimate(double input_tokens, double output_tokens, double price_in_per_m,
                     double price_out_per_m) {
  require_non_negative(input_tokens, "input_tokens");
  require_non_negative(output_tokens, "output_tokens");
  require_non_negative(price_in_per_m, "price_in");
  require_non_negative(price_out_per_m, "price_out");
  return input_tokens * price_in_per_m / 1e6 + output_tokens * price_out_per_m / 1e6;
}

double human_cost(double turns, double seconds_per_turn, double hourly_wage) {
  require_non_negative(turns, "turns");
  require_non_negative(seconds_per_turn, "seconds_per_turn");
  require_non_negative(hourly_wage, "hourly_wage");
  return turns * seconds_per_turn / 3600.0 * hourly_wage;
}

}  // namespace convbench::metrics
