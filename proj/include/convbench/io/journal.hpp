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
#include <fstream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "convbench/io/codec.hpp"
#include "convbench/types.hpp"

namespace convbench {

// Percent-encodes everything outside [A-Za-z0-9._-] so ids map to distinct,
// portable file names. "." and ".." are encoded too.
std::string slugify(std::string_view id);

// Per-episode journal: a header line, one line per turn as it is produced,
// an optional terminal-feedback line, and an end line once the episode is
// over. Only the last line can be torn by a crash.
//
//   {"kind":"header","schema_version":1,"task_id":..,"model_id":..,"omega":..,
//    "max_turns":..,"manifest":{..}}
//   {"kind":"turn","turn":{..}}
//   {"kind":"terminal","feedback":{..}}
//   {"kind":"end","first_success":k|null}
struct JournalHeader {
  std::string task_id;
  std::string model_id;
  FeedbackCombination omega;
  int max_turns = kDefaultMaxTurns;
  Json manifest = Json::object();

  bool operator==(const JournalHeader&) const = default;
};

struct JournalState {
  JournalHeader header;
  std::vector<Turn> turns;
  std::optional<FeedbackBundle> terminal;
  bool complete = false;
  // Bytes up to the end of the last intact line.
  std::uintmax_t intact_bytes = 0;
  bool torn_tail = false;
};

// Throws FormatError on a missing or broken header or on damage before the
// last line, and ParseError-style messages name the line.
JournalState read_journal(const std::filesystem::path& path);

// Throws FormatError unless the journal is complete.
Trajectory trajectory_from(const JournalState& state);
Trajectory read_trajectory(const std::filesystem::path& path);

class JournalWriter {
 public:
  // Starts a fresh journal, replacing any file at `path`.
  static JournalWriter create(const std::filesystem::path& path, const JournalHeader& header);
  // Continues a partial journal, dropping a torn last line first.
  static JournalWriter resume(const std::filesystem::path& path, const JournalState& state);

  void turn(const Turn& turn);
  void terminal(const FeedbackBundle& feedback);
  void end(std::optional<int> first_success);

 private:
  explicit JournalWriter(const std::filesystem::path& path, std::ios::openmode mode);
  void line(const Json& j);

  std::filesystem::path path_;
  std::ofstream out_;
};

// Whole-trajectory convenience used by tests and by tools that rewrite logs.
void write_trajectory(const std::filesystem::path& path, const Trajectory& trajectory,
                      const Json& manifest = Json::object());

// Every complete journal under `root` (quarantine.jsonl and incomplete
// journals are skipped), sorted by path.
std::vector<Trajectory> load_trajectories(const std::filesystem::path& root);

}  // namespace convbench
