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

#include "convbench/io/journal.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <sstream>

#include "convbench/errors.hpp"

namespace convbench {

std::string slugify(std::string_view id) {
  std::string out;
  for (const char ch : id) {
    const auto c = static_cast<unsigned char>(ch);
    if (std::isalnum(c) || c == '.' || c == '_' || c == '-') {
      out += ch;
    } else {
      char buf[4];
      std::snprintf(buf, sizeof buf, "%%%02X", c);
      out += buf;
    }
  }
  if (out.empty()) return "%00";
  if (out == ".") return "%2E";
  if (out == "..") return "%2E%2E";
  return out;
}

namespace {

Json header_json(const JournalHeader& h) {
  Json j;
  j["kind"] = "header";
  j["schema_version"] = kSchemaVersion;
  j["task_id"] = h.task_id;
  j["model_id"] = h.model_id;
  j["omega"] = h.omega;
  j["max_turns"] = h.max_turns;
  j["manifest"] = h.manifest;
  return j;
}

JournalHeader parse_header(const Json& j) {
  if (j.value("kind", "") != "header") throw FormatError("journal does not start with a header");
  const int version = j.at("schema_version").get<int>();
  if (version != kSchemaVersion) {
    throw FormatError("unsupported journal schema_version " + std::to_string(version));
  }
  JournalHeader h;
  h.task_id = j.at("task_id").get<std::string>();
  h.model_id = j.at("model_id").get<std::string>();
  h.omega = j.at("omega").get<FeedbackCombination>();
  h.max_turns = j.at("max_turns").get<int>();
  h.manifest = j.value("manifest", Json::object());
  return h;
}

}  // namespace

JournalState read_journal(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open journal " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();

  JournalState state;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  bool have_header = false;
  const auto fail = [&](const std::string& what) {
    throw FormatError(path.string() + ": line " + std::to_string(line_no) + ": " + what);
  };
  while (pos < text.size()) {
    ++line_no;
    const auto nl = text.find('\n', pos);
    const bool last = nl == std::string::npos || nl + 1 == text.size();
    const std::string_view raw(text.data() + pos, (nl == std::string::npos ? text.size() : nl) - pos);
    std::optional<Json> parsed;
    if (nl != std::string::npos) {
      try {
        parsed = Json::parse(raw);
      } catch (const Json::exception&) {
      }
    }
    if (!parsed) {
      if (last && have_header) {
        state.torn_tail = true;
        break;
      }
      fail(nl == std::string::npos ? "unterminated line" : "malformed JSON");
    }
    const Json& j = *parsed;
    try {
      if (!have_header) {
        state.header = parse_header(j);
        have_header = true;
      } else if (state.complete) {
        fail("content after the end record");
      } else {
        const auto kind = j.at("kind").get<std::string>();
        if (kind == "turn") {
          if (state.terminal) fail("turn after terminal feedback");
          state.turns.push_back(j.at("turn").get<Turn>());
        } else if (kind == "terminal") {
          state.terminal = j.at("feedback").get<FeedbackBundle>();
        } else if (kind == "end") {
          state.complete = true;
        } else {
          fail("unknown record kind '" + kind + "'");
        }
      }
    } catch (const Json::exception& e) {
      fail(e.what());
    }
    pos = nl + 1;
    state.intact_bytes = pos;
  }
  if (!have_header) throw FormatError(path.string() + ": journal has no header");
  return state;
}

Trajectory trajectory_from(const JournalState& state) {
  if (!state.complete) throw FormatError("journal for '" + state.header.task_id + "' is incomplete");
  Trajectory t;
  t.task_id = state.header.task_id;
  t.model_id = state.header.model_id;
  t.omega = state.header.omega;
  t.max_turns = state.header.max_turns;
  t.turns = state.turns;
  t.first_success = compute_first_success(t.turns);
  t.terminal_feedback = state.terminal;
  return t;
}

Trajectory read_trajectory(const std::filesystem::path& path) { return trajectory_from(read_journal(path)); }

JournalWriter::JournalWriter(const std::filesystem::path& path, std::ios::openmode mode)
    : path_(path), out_(path, mode | std::ios::binary) {
  if (!out_) throw FormatError("cannot write journal " + path.string());
}

JournalWriter JournalWriter::create(const std::filesystem::path& path, const JournalHeader& header) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  JournalWriter w(path, std::ios::out | std::ios::trunc);
  w.line(header_json(header));
  return w;
}

JournalWriter JournalWriter::resume(const std::filesystem::path& path, const JournalState& state) {
  if (state.complete) throw std::invalid_argument("journal is already complete");
  std::filesystem::resize_file(path, state.intact_bytes);
  return JournalWriter(path, std::ios::out | std::ios::app);
}

void JournalWriter::line(const Json& j) {
  out_ << dump_line(j) << '\n';
  out_.flush();
  if (!out_) throw FormatError("write to journal " + path_.string() + " failed");
}

void JournalWriter::turn(const Turn& turn) {
  Json j;
  j["kind"] = "turn";
  j["turn"] = turn;
  line(j);
}

void JournalWriter::terminal(const FeedbackBundle& feedback) {
  Json j;
  j["kind"] = "terminal";
  j["feedback"] = feedback;
  line(j);
}

void JournalWriter::end(std::optional<int> first_success) {
  Json j;
  j["kind"] = "end";
  j["first_success"] = first_success ? Json(*first_success) : Json(nullptr);
  line(j);
}

void write_trajectory(const std::filesystem::path& path, const Trajectory& trajectory,
                      const Json& manifest) {
  auto w = JournalWriter::create(
      path, {trajectory.task_id, trajectory.model_id, trajectory.omega, trajectory.max_turns, manifest});
  for (const auto& turn : trajectory.turns) w.turn(turn);
  if (trajectory.terminal_feedback) w.terminal(*trajectory.terminal_feedback);
  w.end(trajectory.first_success);
}

std::vector<Trajectory> load_trajectories(const std::filesystem::path& root) {
  std::vector<std::filesystem::path> paths;
  if (std::filesystem::is_regular_file(root)) {
    paths.push_back(root);
  } else {
    for (const auto& e : std::filesystem::recursive_directory_iterator(root)) {
      if (!e.is_regular_file() || e.path().extension() != ".jsonl") continue;
      if (e.path().filename() == "quarantine.jsonl") continue;
      paths.push_back(e.path());
    }
  }
  std::sort(paths.begin(), paths.end());
  std::vector<Trajectory> out;
  for (const auto& p : paths) {
    const auto state = read_journal(p);
    if (state.complete) out.push_back(trajectory_from(state));
  }
  return out;
}

}  // namespace convbench
