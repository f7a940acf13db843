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

#include "convbench/engine/suite.hpp"

#include <atomic>
#include <fstream>
#include <mutex>
#include <optional>
#include <thread>

#include "convbench/errors.hpp"
#include "convbench/io/journal.hpp"

namespace convbench::engine {

namespace {

struct Unit {
  const Problem* problem;
  std::string model_id;
  FeedbackCombination omega;
  std::filesystem::path path;
  std::optional<JournalState> existing;
};

void check_existing(const Unit& u, const JournalHeader& expected) {
  const auto& found = u.existing->header;
  if (found.manifest.contains("dataset_hash") && expected.manifest.contains("dataset_hash") &&
      found.manifest["dataset_hash"] != expected.manifest["dataset_hash"]) {
    throw DatasetMismatch(u.path.string() + " was written against dataset " +
                          found.manifest["dataset_hash"].dump() + ", current dataset is " +
                          expected.manifest["dataset_hash"].dump());
  }
  if (!(found == expected)) {
    throw ValidationError(u.path.string() +
                          " was written with a different configuration; use a fresh --out or disable resume");
  }
}

}  // namespace

Json to_json(const QuarantineRecord& r) {
  Json j;
  j["model"] = r.model_id;
  j["omega"] = to_string(r.omega);
  j["task_id"] = r.task_id;
  j["kind"] = r.kind;
  j["message"] = r.message;
  return j;
}

std::filesystem::path journal_path(const std::filesystem::path& out_dir, const std::string& model_id,
                                   const FeedbackCombination& omega, const std::string& task_id) {
  return out_dir / slugify(model_id) / to_slug(omega) / (slugify(task_id) + ".jsonl");
}

SuiteResult run_suite(const LiveEngine& engine, const std::vector<Problem>& problems,
                      const std::vector<std::string>& models,
                      const std::vector<FeedbackCombination>& omegas, const SuiteOptions& options) {
  std::vector<Unit> units;
  for (const auto& model : models) {
    for (const auto& omega : omegas) {
      for (const auto& problem : problems) {
        Unit u{&problem, model, omega, journal_path(options.out_dir, model, omega, problem.task_id), {}};
        if (options.resume && std::filesystem::exists(u.path)) {
          u.existing = read_journal(u.path);
          check_existing(u, {problem.task_id, model, omega, engine.config().max_turns, options.manifest});
        }
        units.push_back(std::move(u));
      }
    }
  }
  std::filesystem::create_directories(options.out_dir);

  SuiteResult result;
  std::vector<std::optional<Trajectory>> done(units.size());
  std::mutex mutex;  // guards result and the quarantine file
  std::atomic<std::size_t> next{0};

  const auto quarantine = [&](const Unit& u, const char* kind, const std::string& message) {
    QuarantineRecord record{u.model_id, u.omega, u.problem->task_id, kind, message};
    std::lock_guard lock(mutex);
    std::ofstream out(options.out_dir / "quarantine.jsonl", std::ios::app | std::ios::binary);
    out << dump_line(to_json(record)) << '\n';
    if (options.log) options.log("quarantined " + u.path.string() + ": " + message);
    result.quarantined.push_back(std::move(record));
  };

  const auto run_unit = [&](std::size_t i) {
    Unit& u = units[i];
    const Problem& problem = *u.problem;
    if (u.existing && u.existing->complete) {
      done[i] = trajectory_from(*u.existing);
      std::lock_guard lock(mutex);
      ++result.reused;
      return;
    }
    const JournalHeader header{problem.task_id, u.model_id, u.omega, engine.config().max_turns,
                               options.manifest};
    std::vector<Turn> prior;
    std::optional<FeedbackBundle> prior_terminal;
    std::optional<JournalWriter> writer;
    if (u.existing) {
      prior = u.existing->turns;
      prior_terminal = u.existing->terminal;
      writer.emplace(JournalWriter::resume(u.path, *u.existing));
    } else {
      writer.emplace(JournalWriter::create(u.path, header));
    }
    {
      std::lock_guard lock(mutex);
      ++(u.existing ? result.resumed : result.executed);
    }

    Trajectory t;
    if (prior_terminal) {
      t = trajectory_from(JournalState{header, prior, prior_terminal, true, 0, false});
    } else {
      // Feedback for the final code comes after all turns are journaled.
      t = engine.run_episode(problem, u.model_id, u.omega,
                             [&](const Turn& turn) { writer->turn(turn); }, prior);
      if (t.terminal_feedback) writer->terminal(*t.terminal_feedback);
    }
    writer->end(t.first_success);
    done[i] = std::move(t);
  };

  const auto worker = [&] {
    for (std::size_t i = next++; i < units.size(); i = next++) {
      try {
        run_unit(i);
      } catch (const Error& e) {
        quarantine(units[i], e.kind(), e.what());
      } catch (const std::exception& e) {
        quarantine(units[i], "InternalError", e.what());
      }
    }
  };

  const std::size_t threads = std::max<std::size_t>(1, std::min(options.parallelism, units.size()));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t i = 0; i < threads; ++i) pool.emplace_back(worker);
  }

  for (auto& t : done) {
    if (t) result.trajectories.push_back(std::move(*t));
  }
  return result;
}

}  // namespace convbench::engine
