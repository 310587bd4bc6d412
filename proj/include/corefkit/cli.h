// Copyright 2026 The Corefkit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// The corefkit command line: convert, decode, clean, annotate, evaluate,
// stats and export-train.

#ifndef COREFKIT_CLI_H_
#define COREFKIT_CLI_H_

#include <iosfwd>
#include <string>
#include <string_view>

#include "corefkit/backend.h"
#include "corefkit/pipeline.h"

namespace corefkit {

enum ExitCode { kExitOk = 0, kExitUsage = 1, kExitData = 2, kExitBackend = 3 };

// Backend section of a job file.
struct BackendConfig {
  std::string kind = "oracle";  // oracle, replay, echo or http
  std::string replay_path;
  HttpBackendConfig http;
};

// A job file: pipeline settings, backend and paths. Unknown keys are errors.
struct JobConfig {
  PipelineConfig pipeline;
  BackendConfig backend;
  std::string input;
  std::string output;
  size_t jobs = 1;
};

// Throws std::invalid_argument with the offending key.
JobConfig parse_job_config(std::string_view json_text);

// `in` stands for "-" paths. Returns the process exit code.
int run_cli(int argc, const char *const *argv, std::istream &in,
            std::ostream &out, std::ostream &err);

}  // namespace corefkit

#endif  // COREFKIT_CLI_H_
