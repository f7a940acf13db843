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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "convbench/errors.hpp"
#include "convbench/metrics/metrics.hpp"
#include "convbench/metrics/table.hpp"
#include "convbench/validate.hpp"

using namespace convbench;
using namespace convbench::metrics;

namespace {

// A trajectory whose turn verdicts follow `bits` up to the first success.
Trajectory from_verdicts(const std::vector<bool>& bits, int max_turns) {
  Trajectory t;
  t.max_turns = max_turns;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    Turn turn;
    turn.index = static_cast<int>(i);
    turn.solved = bits[i];
    t.turns.push_back(turn);
    if (bits[i]) break;
  }
  t.first_success = compute_first_success(t.turns);
  return t;
}

// Direct reading of the definitions: rank of the first passing verdict.
double oracle_rr(const std::vector<bool>& bits) {
  for (std::size_t k = 0; k < bits.size(); ++k) {
    if (bits[k]) return 1.0 / static_cast<double>(k + 1);
  }
  return 0.0;
}

double oracle_spearman_distinct(const std::vector<double>& x, const std::vector<double>& y) {
  const auto rank = [](const std::vector<double>& v) {
    std::vector<double> r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
      r[i] = 1.0 + static_cast<double>(std::count_if(v.begin(), v.end(), [&](double w) { return w < v[i]; }));
    }
    return r;
  };
  const auto rx = rank(x), ry = rank(y);
  long double d2 = 0;
  for (std::size_t i = 0; i < x.size(); ++i) d2 += (rx[i] - ry[i]) * (rx[i] - ry[i]);
  const long double n = static_cast<long double>(x.size());
  return static_cast<double>(1.0L - 6.0L * d2 / (n * (n * n - 1.0L)));
}

}  // namespace

TEST_CASE("reciprocal rank examples") {
  CHECK(reciprocal_rank(1) == 1.0);
  CHECK(reciprocal_rank(2) == 0.5);
  CHECK(reciprocal_rank(std::nullopt) == 0.0);
  const auto t = from_verdicts({false, false, true}, 10);
  CHECK(mrr(t) == doctest::Approx(1.0 / 3.0));
  CHECK(recall(t) == 1.0);
  CHECK(recall(from_verdicts({false}, 0)) == 0.0);
}

TEST_CASE("metrics match the definitions on every verdict string up to length 5") {
  for (int len = 1; len <= 5; ++len) {
    std::vector<Trajectory> all;
    double rr_sum = 0, solved = 0;
    for (int mask = 0; mask < (1 << len); ++mask) {
      std::vector<bool> bits(len);
      for (int i = 0; i < len; ++i) bits[i] = (mask >> i) & 1;
      const auto t = from_verdicts(bits, len - 1);
      CHECK(mrr(t) == oracle_rr(bits));
      CHECK(recall(t) == (mask != 0 ? 1.0 : 0.0));
      rr_sum += oracle_rr(bits);
      solved += mask != 0;
      all.push_back(t);
    }
    const auto agg = aggregate(all);
    CHECK(agg.problems == all.size());
    CHECK(agg.mrr == doctest::Approx(100.0 * rr_sum / all.size()).epsilon(1e-12));
    CHECK(agg.recall == doctest::Approx(100.0 * solved / all.size()).epsilon(1e-12));
    const auto curve = pass_at_1_curve(all);
    REQUIRE(curve.size() == static_cast<std::size_t>(len));
    CHECK(curve.back() == doctest::Approx(agg.recall));
    CHECK(std::is_sorted(curve.begin(), curve.end()));
  }
}

TEST_CASE("single-turn runs: MRR, recall and pass@1 coincide") {
  std::vector<Trajectory> ts;
  for (bool b : {true, false, false, true, true}) ts.push_back(from_verdicts({b}, 0));
  const auto agg = aggregate(ts);
  const auto curve = pass_at_1_curve(ts);
  CHECK(agg.mrr == doctest::Approx(60.0));
  CHECK(agg.recall == doctest::Approx(60.0));
  REQUIRE(curve.size() == 1);
  CHECK(curve[0] == doctest::Approx(60.0));
}

TEST_CASE("pass@1 curve carries successes forward") {
  const std::vector<Trajectory> ts = {from_verdicts({false, true}, 2), from_verdicts({true}, 2),
                                      from_verdicts({false, false, false}, 2), from_verdicts({false, false, true}, 2)};
  CHECK(pass_at_1_curve(ts) == std::vector<double>{25.0, 50.0, 75.0});
  CHECK(pass_at_1_curve({}).empty());
  CHECK_THROWS_AS(pass_at_1_curve({from_verdicts({true}, 1), from_verdicts({true}, 2)}), std::invalid_argument);
  CHECK(aggregate({}).mrr == 0.0);
}

TEST_CASE("spearman equals the rank-difference formula over all permutations of five") {
  const std::vector<double> scores = {12.5, 3.0, 47.25, 8.0, 30.0};
  std::vector<int> perm = {0, 1, 2, 3, 4};
  int count = 0;
  do {
    std::vector<double> ys;
    for (int i : perm) ys.push_back(scores[i] * 2 + 1);
    CHECK(std::abs(spearman(scores, ys) - oracle_spearman_distinct(scores, ys)) <= 1e-12);
    ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));
  CHECK(count == 120);
}

TEST_CASE("average ranks and tied spearman") {
  CHECK(average_ranks({10, 20, 20, 5}) == std::vector<double>{2.0, 3.5, 3.5, 1.0});
  CHECK(average_ranks({1, 1, 1}) == std::vector<double>{2.0, 2.0, 2.0});
  CHECK(average_ranks({}).empty());
  // x ranks (1, 2.5, 2.5, 4), y ranks (1, 2, 3, 4): r = 4.5 / sqrt(4.5 * 5)
  CHECK(spearman({1, 2, 2, 3}, {1, 2, 3, 4}) == doctest::Approx(4.5 / std::sqrt(22.5)).epsilon(1e-12));
  CHECK(spearman({1, 2, 3}, {3, 2, 1}) == doctest::Approx(-1.0));
  CHECK(spearman({1, 2, 3, 4}, {1, 4, 9, 16}) == 1.0);
}

TEST_CASE("spearman is invariant under monotone maps and symmetric") {
  const std::vector<double> x = {0.3, 9.1, 4.4, 2.2, 7.7, 5.0};
  const std::vector<double> y = {1.0, 3.0, 2.0, 6.0, 5.0, 4.0};
  std::vector<double> x_exp;
  for (double v : x) x_exp.push_back(std::exp(v));
  CHECK(spearman(x, y) == doctest::Approx(spearman(x_exp, y)).epsilon(1e-12));
  CHECK(spearman(x, y) == doctest::Approx(spearman(y, x)).epsilon(1e-12));
  const double rho = spearman(x, y);
  CHECK(rho >= -1.0);
  CHECK(rho <= 1.0);
}

TEST_CASE("correlation input errors") {
  CHECK_THROWS_AS(pearson({1, 2}, {1}), std::invalid_argument);
  CHECK_THROWS_AS(spearman({1}, {1}), std::invalid_argument);
  CHECK_THROWS_AS(spearman({1, 1, 1}, {1, 2, 3}), DegenerateInput);
  CHECK_THROWS_AS(pearson({1, 2, 3}, {4, 4, 4}), DegenerateInput);
}

TEST_CASE("cost model") {
  CHECK(cost_estimate(26.4e6, 5.5e6, 5, 15) == doctest::Approx(214.5));
  CHECK(std::abs(cost_estimate(26.4e6, 5.5e6, 5, 15) - 215.0) <= 1.0);
  const double human = human_cost(15905, 96, 35.04);
  CHECK(human == doctest::Approx(15905.0 * 96.0 / 3600.0 * 35.04));
  CHECK(std::abs(human - 14792.0) / 14792.0 <= 0.01);
  CHECK(cost_estimate(0, 0, 5, 15) == 0.0);
  CHECK_THROWS_AS(cost_estimate(-1, 0, 5, 15), std::invalid_argument);
  CHECK_THROWS_AS(human_cost(1, 1, -1), std::invalid_argument);
}

TEST_CASE("score table rendering") {
  ScoreTable table("MRR");
  const FeedbackCombination base{};
  const FeedbackCombination fcfe{true, ExecutionLevel::kPartial, VerbalLevel::kNone};
  table.set("m1", base, 46.04);
  table.set("m1", fcfe, 55.55);
  table.set("model-two", fcfe, 100);
  CHECK(table.get("m1", base) == 46.04);
  CHECK_FALSE(table.get("model-two", base).has_value());
  CHECK_THROWS_AS(table.set("m1", base, 100.5), std::invalid_argument);
  CHECK_THROWS_AS(table.set("m1", base, std::nan("")), std::invalid_argument);

  CHECK(format_percent(46.04) == "46.0");
  CHECK(table.to_text() ==
        "MRR\n"
        "model      phi,phi,phi  fc,fe,phi\n"
        "m1         46.0         55.5\n"
        "model-two  -            100.0\n");
  CHECK(table.to_csv() == "model,\"phi,phi,phi\",\"fc,fe,phi\"\nm1,46.0,55.5\nmodel-two,,100.0\n");
  const auto md = table.to_markdown();
  CHECK(md.rfind("### MRR\n\n| model | ⟨phi,phi,phi⟩ | ⟨fc,fe,phi⟩ |\n|---|---:|---:|\n", 0) == 0);
  CHECK(md.find("| model-two | - | 100.0 |") != std::string::npos);
}
