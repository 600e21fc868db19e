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

#ifndef FAIRFRONTIER_HARNESS_PERSISTENCE_H_
#define FAIRFRONTIER_HARNESS_PERSISTENCE_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "fairfrontier/core/types.h"
#include "fairfrontier/fairness/gate.h"

namespace fairfrontier {

inline constexpr int kFrontierSchemaVersion = 1;

struct FrontierMeta {
  int schema_version = kFrontierSchemaVersion;
  std::string dataset = "synthetic";
  // ISO-8601 UTC. The only field allowed to differ between identical runs.
  std::string generated_at;
  uint64_t master_seed = 0;

  friend bool operator==(const FrontierMeta&, const FrontierMeta&) = default;
};

struct FrontierDocument {
  FrontierMeta meta;
  std::vector<ExperimentRecord> records;

  friend bool operator==(const FrontierDocument&,
                         const FrontierDocument&) = default;
};

struct LoadedFrontier {
  FrontierDocument document;
  // Unknown fields that were skipped, one message each.
  std::vector<std::string> warnings;
};

// Serializes with sorted keys and two-space indent. Doubles use the shortest
// representation that round-trips. Fails on non-finite metric values.
absl::StatusOr<std::string> FrontierToJson(const FrontierDocument& document);

// Parse errors name the line and column; field errors name the JSON path,
// e.g. "records[3].accuracy: expected a number".
absl::StatusOr<LoadedFrontier> ParseFrontierJson(std::string_view text);

absl::Status SaveFrontier(const std::string& path,
                          const FrontierDocument& document);
absl::StatusOr<LoadedFrontier> LoadFrontier(const std::string& path);

// One row per record. Columns: the record fields in JSON order, flags joined
// by ';', then one "extra.<key>" column per key present in any record (sorted;
// empty when a record lacks it).
std::string RecordsToCsv(std::span<const ExperimentRecord> records);

// One record as a JSON object, same field layout as frontier.json.
std::string RecordToJsonString(const ExperimentRecord& record);

// JSON array of records, same field layout as frontier.json.
std::string RecordsToJson(std::span<const ExperimentRecord> records);

// Columns: index, group, label, decision, condition (empty when unset).
std::string GateTraceToCsv(std::span<const GateTraceEntry> trace);

std::string CurrentUtcTimestamp();

absl::StatusOr<std::string> ReadFile(const std::string& path);
absl::Status WriteFile(const std::string& path, std::string_view contents);

}  // namespace fairfrontier

#endif  // FAIRFRONTIER_HARNESS_PERSISTENCE_H_
