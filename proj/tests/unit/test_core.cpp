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

#include <random>
#include <set>

#include "convbench/io/codec.hpp"
#include "convbench/types.hpp"
#include "convbench/validate.hpp"
#include "fixtures.hpp"

using namespace convbench;

namespace {

FeedbackCombination omega(bool fc, ExecutionLevel fe, VerbalLevel fv) { return {fc, fe, fv}; }

std::string random_text(std::mt19937& rng, std::size_t max_len) {
  static const std::vector<std::string> alphabet = {"a", "b", "X", " ", "_", "\n", "\t", "\"", "\\",
                                                   "{", "]", "é", "✓", "0", "3"};
  std::uniform_int_distribution<std::size_t> len(0, max_len);
  std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
  std::string s;
  const auto n = len(rng);
  for (std::size_t i = 0; i < n; ++i) s += alphabet[pick(rng)];
  return s;
}

Trajectory random_trajectory(std::mt19937& rng) {
  const auto all = enumerate_combinations();
  Trajectory t;
  t.task_id = "task/" + std::to_string(rng() % 1000);
  t.model_id = random_text(rng, 8);
  t.omega = all[rng() % all.size()];
  t.max_turns = static_cast<int>(rng() % 4);
  const int n = t.omega.is_baseline() ? 1 : 1 + static_cast<int>(rng() % (t.max_turns + 1));
  for (int i = 0; i < n; ++i) {
    Turn turn;
    turn.index = i;
    turn.code = random_text(rng, 40);
    if (rng() % 5 == 0) turn.extraction_error = random_text(rng, 10);
    if (i > 0) {
      turn.feedback.compilation =
          rng() % 2 ? CompilationFeedback::success() : CompilationFeedback::failure("E: " + random_text(rng, 20));
      if (const auto cov = t.omega.coverage()) {
        ExecutionFeedback fe;
        fe.coverage = *cov;
        for (int c = 0; c < static_cast<int>(rng() % 4); ++c) {
          fe.results.push_back({"test_" + std::to_string(c), static_cast<CaseStatus>(rng() % 4),
                                random_text(rng, 30)});
        }
        turn.feedback.execution = fe;
      }
      if (t.omega.has_verbal()) {
        turn.feedback.verbal = VerbalFeedback{t.omega.verbal, "v" + random_text(rng, 30),
                                              {rng() % 2 == 0, rng() % 2 == 0}};
      }
    }
    t.turns.push_back(turn);
  }
  t.turns.back().solved = rng() % 2 == 0;
  t.first_success = compute_first_success(t.turns);
  if (!t.turns.back().solved && rng() % 2) t.terminal_feedback = t.turns.back().feedback;
  return t;
}

}  // namespace

TEST_CASE("enumerate_combinations: baseline first, then the nine multi-turn columns") {
  const auto all = enumerate_combinations();
  REQUIRE(all.size() == 10);
  CHECK(all.front().is_baseline());
  CHECK(all[1] == omega(true, ExecutionLevel::kNone, VerbalLevel::kNone));
  CHECK(std::set<FeedbackCombination>(all.begin(), all.end()).size() == 10);

  std::set<std::pair<ExecutionLevel, VerbalLevel>> product;
  for (std::size_t i = 1; i < all.size(); ++i) {
    CHECK(all[i].compilation);
    product.insert({all[i].execution, all[i].verbal});
  }
  CHECK(product.size() == 9);
  for (const auto& o : all) {
    CHECK(o.is_valid());
    CHECK_FALSE((!o.compilation && o.verbal == VerbalLevel::kNovice));
  }
  // Execution varies fastest within each verbal level.
  CHECK(all[2] == omega(true, ExecutionLevel::kPartial, VerbalLevel::kNone));
  CHECK(all[3] == omega(true, ExecutionLevel::kFull, VerbalLevel::kNone));
  CHECK(all[9] == omega(true, ExecutionLevel::kFull, VerbalLevel::kExpert));
}

TEST_CASE("combination strings round-trip and parse loosely") {
  std::set<std::string> slugs;
  for (const auto& o : enumerate_combinations()) {
    CHECK(parse_combination(to_string(o)) == o);
    slugs.insert(to_slug(o));
  }
  CHECK(slugs.size() == 10);
  CHECK(to_string(FeedbackCombination{}) == "phi,phi,phi");
  CHECK(to_string(omega(true, ExecutionLevel::kFull, VerbalLevel::kExpert)) == "fc,fe*,fv*");
  CHECK(to_slug(omega(true, ExecutionLevel::kFull, VerbalLevel::kNovice)) == "fc_festar_fv");
  CHECK(parse_combination("fc,fv*") == omega(true, ExecutionLevel::kNone, VerbalLevel::kExpert));
  CHECK(parse_combination("fc,φ,fv") == omega(true, ExecutionLevel::kNone, VerbalLevel::kNovice));
  CHECK(parse_combination("baseline").is_baseline());
  CHECK(parse_combination("phi").is_baseline());
  CHECK_THROWS_AS(parse_combination("fe,fv"), std::invalid_argument);
  CHECK_THROWS_AS(parse_combination("fc,fx"), std::invalid_argument);
  CHECK_FALSE(omega(false, ExecutionLevel::kFull, VerbalLevel::kNone).is_valid());
}

TEST_CASE("validate_problem reports every violated invariant") {
  CHECK(validate_problem(testing::sort_problem()).empty());

  auto p = testing::sort_problem();
  p.suite.case_names.clear();
  auto report = validate_problem(p);
  REQUIRE(report.size() == 1);
  CHECK(report[0].find("empty suite") != std::string::npos);

  p = testing::sort_problem();
  p.suite.case_names.push_back("test_case_2");
  report = validate_problem(p);
  REQUIRE(report.size() == 1);
  CHECK(report[0].find("duplicate case") != std::string::npos);

  Problem empty;
  CHECK(validate_problem(empty).size() >= 4);
}

TEST_CASE("first_success counts the initial generation as position 1") {
  std::vector<Turn> turns(3);
  CHECK_FALSE(compute_first_success(turns).has_value());
  turns[2].solved = true;
  CHECK(compute_first_success(turns) == 3);
  turns[0].solved = true;
  CHECK(compute_first_success(turns) == 1);
}

TEST_CASE("check_trajectory enforces turn and feedback invariants") {
  Trajectory t;
  t.task_id = "a";
  t.model_id = "m";
  t.omega = omega(true, ExecutionLevel::kPartial, VerbalLevel::kNone);
  t.max_turns = 1;
  Turn t0;
  Turn t1;
  t1.index = 1;
  t1.feedback.compilation = CompilationFeedback::success();
  t1.feedback.execution = ExecutionFeedback{Coverage::kPartial, {}};
  t1.solved = true;
  t.turns = {t0, t1};
  t.first_success = 2;
  CHECK(check_trajectory(t).empty());

  auto bad = t;
  bad.turns[1].feedback.execution->coverage = Coverage::kFull;
  CHECK_FALSE(check_trajectory(bad).empty());

  bad = t;
  bad.first_success = 1;
  CHECK_FALSE(check_trajectory(bad).empty());

  bad = t;
  bad.turns[0].solved = true;
  CHECK_FALSE(check_trajectory(bad).empty());

  bad = t;
  bad.turns[1].solved = false;
  bad.first_success.reset();
  bad.max_turns = 5;
  CHECK_FALSE(check_trajectory(bad).empty());  // stopped early while unsolved

  bad = t;
  bad.terminal_feedback = FeedbackBundle{};
  CHECK_FALSE(check_trajectory(bad).empty());

  bad = t;
  bad.turns[0].feedback.compilation = CompilationFeedback::success();
  CHECK_FALSE(check_trajectory(bad).empty());

  Trajectory base;
  base.turns = {Turn{}};
  base.max_turns = 10;
  CHECK(check_trajectory(base).empty());
}

TEST_CASE("selected_cases takes a stable prefix for partial coverage") {
  const auto p = testing::sort_problem();
  CHECK(selected_cases(p.suite, Coverage::kFull) == p.suite.case_names);
  const auto partial = selected_cases(p.suite, Coverage::kPartial);
  REQUIRE(partial.size() == 3);
  CHECK(std::equal(partial.begin(), partial.end(), p.suite.case_names.begin()));
  TestSuite two{"", {"a", "b"}};
  CHECK(selected_cases(two, Coverage::kPartial).size() == 2);
}

TEST_CASE("codec: every type survives serialize -> parse -> serialize") {
  std::mt19937 rng(20241018);
  for (int i = 0; i < 300; ++i) {
    const Trajectory t = random_trajectory(rng);
    const Json j = t;
    const std::string once = dump_line(j);
    const Trajectory back = Json::parse(once).get<Trajectory>();
    CHECK(back == t);
    CHECK(dump_line(Json(back)) == once);
  }
  const Problem p = testing::sort_problem();
  CHECK(Json(p).get<Problem>() == p);
}

TEST_CASE("codec writes first_success as null and omits absent optionals") {
  Trajectory t;
  t.turns = {Turn{}};
  const Json j = t;
  CHECK(j.at("first_success").is_null());
  CHECK_FALSE(j.contains("terminal_feedback"));
  CHECK_FALSE(j.at("turns").at(0).contains("extraction_error"));
}
