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

#ifndef FAIRFRONTIER_CLI_CONFIG_H_
#define FAIRFRONTIER_CLI_CONFIG_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/status.h"
#include "fairfrontier/harness/grid.h"

namespace fairfrontier {

struct CliConfig {
  GridSpec grid;
  // Master seed; every random stream is derived from it.
  uint64_t seed = 0;
  int jobs = 1;
};

// Applies one "key = value" setting. Lists are comma separated; tables
// (data.group_class_weights, data.exact_counts) separate rows with ';'.
// Unknown keys and malformed values are InvalidArgument errors naming the key.
absl::Status ApplyConfigValue(std::string_view key, std::string_view value,
                              CliConfig& config);

// Parses a whole file: one setting per line, '#' starts a comment, blank
// lines are skipped. Errors carry the 1-based line number.
absl::Status ApplyConfigText(std::string_view text, CliConfig& config);

// Every accepted key, sorted.
std::vector<std::string> ConfigKeys();

}  // namespace fairfrontier

#endif  // FAIRFRONTIER_CLI_CONFIG_H_
