// Copyright 2026 The FairFrontier Authors
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

#ifndef FAIRFRONTIER_CLI_COMMANDS_H_
#define FAIRFRONTIER_CLI_COMMANDS_H_

#include <ostream>
#include <string>
#include <vector>

namespace fairfrontier {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInfeasible = 1;
inline constexpr int kExitBadInput = 2;

// Runs the command line `args` (without the program name). Tables and
// machine output go to `out`, diagnostics to `err`. Returns the exit code.
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);

}  // namespace fairfrontier

#endif  // FAIRFRONTIER_CLI_COMMANDS_H_
