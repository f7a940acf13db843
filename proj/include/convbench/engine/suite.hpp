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
#include <functional>
#include <string>
#include <vector>

#include "convbench/engine/live.hpp"
#include "convbench/io/codec.hpp"

namespace convbench::engine {

struct QuarantineRecord {
  std::string model_id;
  FeedbackCombination omega;
  std::string task_id;
  std::string kind;
  std::string message;
};

Json to_json(const QuarantineRecord& record);

struct SuiteOptions {
  std::filesystem::path out_dir;
  std::size_t parallelism = 1;
  // Written into every journal header; existing journals must carry an
  // equal manifest to be reused. A "dataset_hash" key that differs raises
  // DatasetMismatch, any other difference ValidationError.
  Json manifest = Json::object();
  // Otherwise existing journals are overwritten.
  bool resume = true;
  std::function<void(const std::string&)> log;
};

struct SuiteResult {
  // Completed episodes in (model, omega, problem) order.
  std::vector<Trajectory> trajectories;
  std::vector<QuarantineRecord> quarantined;
  std::size_t reused = 0;    // complete journals found on disk
  std::size_t resumed = 0;   // partial journals continued
  std::size_t executed = 0;  // started from scratch
};

// <out>/<model>/<omega>/<task>.jsonl with every component slugified.
std::filesystem::path journal_path(const std::filesystem::path& out_dir, const std::string& model_id,
                                   const FeedbackCombination& omega, const std::string& task_id);

// One episode per (model, omega, problem), journaled turn by turn so a
// killed run picks up where it stopped. Failed episodes are appended to
// <out>/quarantine.jsonl and reported, and the rest of the batch carries on.
SuiteResult run_suite(const LiveEngine& engine, const std::vector<Problem>& problems,
                      const std::vector<std::string>& models,
                      const std::vector<FeedbackCombination>& omegas, const SuiteOptions& options);

}  // namespace convbench::engine
