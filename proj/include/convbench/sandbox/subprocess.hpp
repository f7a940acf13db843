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

#include <chrono>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace convbench::sandbox {

struct ProcessResult {
  int exit_code = -1;         // valid when exited normally
  int term_signal = 0;        // nonzero when killed by a signal
  bool deadline_exceeded = false;
  std::string out;
  std::string err;
};

struct ProcessOptions {
  std::chrono::milliseconds deadline{60'000};
  std::optional<std::filesystem::path> working_dir;
};

// Spawns argv[0] (PATH lookup) in its own process group, feeds `input` on
// stdin, and collects stdout/stderr until exit. Past the deadline the whole
// group is SIGKILLed. Throws RunnerUnavailable when the spawn itself fails.
ProcessResult run_process(const std::vector<std::string>& argv, const std::string& input,
                          const ProcessOptions& options);

// Splits a command line on whitespace, honouring single and double quotes.
std::vector<std::string> split_command(const std::string& command);

}  // namespace convbench::sandbox
