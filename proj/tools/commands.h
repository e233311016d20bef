// Copyright 2026 The ecodrive Authors.
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

#ifndef ECODRIVE_TOOLS_COMMANDS_H_
#define ECODRIVE_TOOLS_COMMANDS_H_

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace ecodrive::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitPropertyFailure = 1,
  kExitInputError = 2,
};

// Environment variable naming the default output directory.
inline constexpr char kOutDirEnv[] = "ECODRIVE_OUT_DIR";

struct RunManifest {
  std::string command;
  std::vector<std::string> scenarios;
  std::vector<std::string> traces;
  std::string route;
  std::string vehicle;
  std::string out_dir;
  std::optional<uint64_t> seed;
  std::optional<int> instances;
  std::optional<double> prominence;
  std::optional<double> dt;
  std::optional<double> slack;
};

int CmdSimulate(const RunManifest& manifest, std::ostream& out,
                std::ostream& err);
int CmdScore(const RunManifest& manifest, std::ostream& out,
             std::ostream& err);
int CmdCompare(const RunManifest& manifest, std::ostream& out,
               std::ostream& err);
int CmdOracleCheck(const RunManifest& manifest, std::ostream& out,
                   std::ostream& err);

// Parses argv and dispatches to one of the commands above.
int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err);

}  // namespace ecodrive::cli

#endif  // ECODRIVE_TOOLS_COMMANDS_H_
