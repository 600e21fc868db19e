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

#ifndef FAIRFRONTIER_PARETO_PARETO_H_
#define FAIRFRONTIER_PARETO_PARETO_H_

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "fairfrontier/core/types.h"

namespace fairfrontier {

enum class Direction { kMinimize, kMaximize };

struct Objective {
  std::string field;
  Direction direction = Direction::kMinimize;
};

// Numeric ExperimentRecord fields usable as objectives: eps_spec,
// fairness_spec, eps_achieved, max_disparity, accuracy, coverage.
absl::StatusOr<double> RecordField(const ExperimentRecord& record,
                                   std::string_view field);

class ObjectiveSpec {
 public:
  // Minimize eps_achieved and max_disparity, maximize accuracy and coverage.
  static ObjectiveSpec Default();
  // Fails on an empty list or an unknown field.
  static absl::StatusOr<ObjectiveSpec> Create(std::vector<Objective> objectives);

  std::span<const Objective> objectives() const { return objectives_; }

 private:
  explicit ObjectiveSpec(std::vector<Objective> objectives)
      : objectives_(std::move(objectives)) {}
  std::vector<Objective> objectives_;
};

// a is no worse than b on every objective and strictly better on one.
bool Dominates(const ExperimentRecord& a, const ExperimentRecord& b,
               const ObjectiveSpec& spec);

// Non-dominated records in input order. O(n^2).
std::vector<ExperimentRecord> Frontier(std::span<const ExperimentRecord> records,
                                       const ObjectiveSpec& spec);
// Indices of the non-dominated records, ascending.
std::vector<size_t> FrontierIndices(std::span<const ExperimentRecord> records,
                                    const ObjectiveSpec& spec);

enum class QueryObjective { kAccuracy, kCoverage };

absl::StatusOr<QueryObjective> ParseQueryObjective(std::string_view name);

struct FrontierConstraints {
  double max_eps = 0.0;
  double max_gamma = 0.0;
};

// Among records with eps_achieved <= max_eps and max_disparity <= max_gamma,
// the one maximizing the objective; ties go to lower eps_achieved, then lower
// max_disparity, then input order. nullopt if nothing is feasible.
std::optional<ExperimentRecord> FrontierQuery(
    std::span<const ExperimentRecord> records,
    const FrontierConstraints& constraints, QueryObjective objective);

// Rounds every numeric metric field to 6 decimals.
ExperimentRecord RoundRecord(ExperimentRecord record);
double Round6(double value);

}  // namespace fairfrontier

#endif  // FAIRFRONTIER_PARETO_PARETO_H_
