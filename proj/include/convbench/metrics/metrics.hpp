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

#include <optional>
#include <vector>

#include "convbench/types.hpp"

namespace convbench::metrics {

// 1/k for first success at 1-based position k, 0 when never solved.
double reciprocal_rank(std::optional<int> first_success);
double mrr(const Trajectory& trajectory);
// 1.0 or 0.0.
double recall(const Trajectory& trajectory);

struct Aggregate {
  double mrr = 0.0;     // percent
  double recall = 0.0;  // percent
  std::size_t problems = 0;
};

// Unweighted means over trajectories. Zero trajectories give zeros.
Aggregate aggregate(const std::vector<Trajectory>& trajectories);

// Entry t is the percentage of trajectories solved at or before turn t, for
// t = 0..n. Throws std::invalid_argument when max_turns differ.
std::vector<double> pass_at_1_curve(const std::vector<Trajectory>& trajectories);

// 1-based ranks, ties share the mean of their positions.
std::vector<double> average_ranks(const std::vector<double>& values);

// Throws std::invalid_argument on size mismatch, DegenerateInput on zero
// variance.
double pearson(const std::vector<double>& xs, const std::vector<double>& ys);
// Pearson of average ranks. Needs at least two pairs.
double spearman(const std::vector<double>& xs, const std::vector<double>& ys);

// Prices are per million tokens.
double cost_estimate(double input_tokens, double output_tokens, double price_in_per_m,
                     double price_out_per_m);
double human_cost(double turns, double seconds_per_turn, double hourly_wage);

}  // namespace convbench::metrics
