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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace convbench {

// Base of every error the harness raises on purpose. Callers that want to
// quarantine a failed unit of work catch this; anything else is a bug.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* kind() const noexcept { return "Error"; }
};

#define CONVBENCH_DEFINE_ERROR(Name, Base)                       \
  class Name : public Base {                                     \
   public:                                                       \
    using Base::Base;                                            \
    const char* kind() const noexcept override { return #Name; } \
  }

// Sandbox process could not be spawned or broke the runner protocol.
CONVBENCH_DEFINE_ERROR(RunnerUnavailable, Error);

// Chat client failures.
CONVBENCH_DEFINE_ERROR(ClientError, Error);
CONVBENCH_DEFINE_ERROR(TransportError, ClientError);
CONVBENCH_DEFINE_ERROR(CacheMiss, ClientError);
CONVBENCH_DEFINE_ERROR(EmptyCompletion, ClientError);
CONVBENCH_DEFINE_ERROR(NoCodeFound, Error);

class RateLimited : public ClientError {
 public:
  RateLimited(const std::string& what, int attempts, double next_backoff_s)
      : ClientError(what), attempts_(attempts), next_backoff_s_(next_backoff_s) {}
  const char* kind() const noexcept override { return "RateLimited"; }
  int attempts() const noexcept { return attempts_; }
  double next_backoff_s() const noexcept { return next_backoff_s_; }

 private:
  int attempts_;
  double next_backoff_s_;
};

// Feedback simulation.
CONVBENCH_DEFINE_ERROR(MissingGroundTruth, Error);
CONVBENCH_DEFINE_ERROR(NoExpertFeedback, Error);

// Static benchmark construction.
CONVBENCH_DEFINE_ERROR(MixedReference, Error);
CONVBENCH_DEFINE_ERROR(NonVerbalCombination, Error);
CONVBENCH_DEFINE_ERROR(MissingFeedback, Error);

// Statistics.
CONVBENCH_DEFINE_ERROR(DegenerateInput, Error);

// Ingestion and persistence.
CONVBENCH_DEFINE_ERROR(ValidationError, Error);
CONVBENCH_DEFINE_ERROR(DatasetMismatch, Error);
CONVBENCH_DEFINE_ERROR(FormatError, Error);

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  const char* kind() const noexcept override { return "ParseError"; }
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

#undef CONVBENCH_DEFINE_ERROR

}  // namespace convbench
