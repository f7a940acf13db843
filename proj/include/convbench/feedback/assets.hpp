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

#include <string_view>

// Prompt templates compiled in from assets/prompts/v1.
namespace convbench::assets {

std::string_view code_initial();
std::string_view code_refine();
std::string_view exemplar_novice_compilation();
std::string_view exemplar_novice_execution();
std::string_view exemplar_expert();
std::string_view exemplar_expert_execution();
std::string_view expert_system();
std::string_view novice_system();
std::string_view response_format();

}  // namespace convbench::assets
