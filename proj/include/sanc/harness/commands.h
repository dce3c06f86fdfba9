// Copyright 2026 The Selective ANC Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SANC_HARNESS_COMMANDS_H_
#define SANC_HARNESS_COMMANDS_H_

#include <cstdint>
#include <optional>
#include <string>

#include "sanc/harness/experiment.h"

namespace sanc {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitDivergence = 2;

constexpr const char* kOutputDirEnv = "ANC_OUTPUT_DIR";

struct CommandOptions {
  std::string out_dir;
  int jobs = 1;
  bool ratio_grid = false;
};

// Each returns an exit code; outputs go to options.out_dir.
int CmdRun(const ExperimentSpec& spec, const CommandOptions& options);
int CmdDirectivity(const ExperimentSpec& spec, const CommandOptions& options);
int CmdRobustness(const ExperimentSpec& spec, const CommandOptions& options);
int CmdCompare(const ExperimentSpec& spec, const CommandOptions& options);

// Full command line handling for the anc tool.
int RunCli(int argc, char** argv);

}  // namespace sanc

#endif  // SANC_HARNESS_COMMANDS_H_
