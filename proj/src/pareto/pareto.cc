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

#include "fairfrontier/pareto/pareto.h"

#include <cmath>

#include "absl/strings/str_format.h"

namespace fairfrontier {
namespace {

// Field lookup without the error path; names are checked by ObjectiveSpec.
double FieldValue(const ExperimentRecord& r, std::string_view field) {
  if (field == "eps_spec") return r.eps_spec;
  if (field == "fairness_spec") return r.fairness_spec;
  if (field == "eps_achieved") return r.eps_achieved;
  if (field == "max_disparity") return r.max_disparity;
  if (field == "accuracy") return r.accuracy;
  return r.coverage;
}

bool KnownField(std::string_view field) {
  return field == "eps_spec" || field == "fairness_spec" ||
         field == "eps_achieved" || field == "max_disparity" ||
         field == "accuracy" || field == "coverage";
}

}  // namespace

absl::StatusOr<double> RecordField(const ExperimentRecord& record,
                                   std::string_view field) {
  if (!KnownField(field)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("unknown record field '%s'", std::string(field)));
  }
  return FieldValue(record, field);
}

ObjectiveSpec ObjectiveSpec::Default() {
  return ObjectiveSpec({{"eps_achieved", Direction::kMinimize},
                        {"max_disparity", Direction::kMinimize},
                        {"accuracy", Direction::kMaximize},
                        {"coverage", Direction::kMaximize}});
}

absl::StatusOr<ObjectiveSpec> ObjectiveSpec::Create(
    std::vector<Objective> objectives) {
  if (objectives.empty()) {
    return absl::InvalidArgumentError("objective spec is empty");
  }
  for (const Objective& o : objectives) {
    if (!KnownField(o.field)) {
      return absl::InvalidArgumentError(
          absl::StrFormat("unknown objective field '%s'", o.field));
    }
  }
  return ObjectiveSpec(std::move(objectives));
}

bool Dominates(const ExperimentRecord& a, const ExperimentRecord& b,
               const ObjectiveSpec& spec) {
  bool strict = false;
  for (const Objective& o : spec.objectives()) {
    double va = FieldValue(a, o.field);
    double vb = FieldValue(b, o.field);
    if (o.direction == Direction::kMaximize) {
      va = -va;
      vb = -vb;
    }
    if (va > vb) return false;
    if (va < vb) strict = true;
  }
  return strict;
}

std::vector<size_t> FrontierIndices(std::span<const ExperimentRecord> records,
                                    const ObjectiveSpec& spec) {
  std::vector<size_t> out;
  for (size_t i = 0; i < records.size(); ++i) {
    bool dominated = false;
    for (size_t j = 0; j < records.size() && !dominated; ++j) {
      dominated = j != i && Dominates(records[j], records[i], spec);
    }
    if (!dominated) out.push_back(i);
  }
  return out;
}

std::vector<ExperimentRecord> Frontier(std::span<const ExperimentRecord> records,
                                       const ObjectiveSpec& spec) {
  std::vector<ExperimentRecord> out;
  for (size_t i : FrontierIndices(records, spec)) out.push_back(records[i]);
  return out;
}

absl::StatusOr<QueryObjective> ParseQueryObjective(std::string_view name) {
  if (name == "accuracy") return QueryObjective::kAccuracy;
  if (name == "coverage") return QueryObjective::kCoverage;
  return absl::InvalidArgumentError(
      absl::StrFormat("objective must be accuracy or coverage, got '%s'", std::string(name)));
}

std::optional<ExperimentRecord> FrontierQuery(
    std::span<const ExperimentRecord> records,
    const FrontierConstraints& constraints, QueryObjective objective) {
  auto score = [&](const ExperimentRecord& r) {
    return objective == QueryObjective::kAccuracy ? r.accuracy : r.coverage;
  };
  const ExperimentRecord* best = nullptr;
  for (const ExperimentRecord& r : records) {
    if (!(r.eps_achieved <= constraints.max_eps &&
          r.max_disparity <= constraints.max_gamma)) {
      continue;
    }
    if (best == nullptr) {
      best = &r;
      continue;
    }
    const double s = score(r);
    const double sb = score(*best);
    if (s > sb ||
        (s == sb && (r.eps_achieved < best->eps_achieved ||
                     (r.eps_achieved == best->eps_achieved &&
                      r.max_disparity < best->max_disparity)))) {
      best = &r;
    }
  }
  if (best == nullptr) return std::nullopt;
  return *best;
}

double Round6(double value) {
  if (!std::isfinite(value)) return value;
  const double r = std::round(value * 1e6) / 1e6;
  return r == 0.0 ? 0.0 : r;  // no negative zero
}

ExperimentRecord RoundRecord(ExperimentRecord record) {
  record.eps_spec = Round6(record.eps_spec);
  record.fairness_spec = Round6(record.fairness_spec);
  record.eps_achieved = Round6(record.eps_achieved);
  record.max_disparity = Round6(record.max_disparity);
  record.accuracy = Round6(record.accuracy);
  record.coverage = Round6(record.coverage);
  for (auto& [name, value] : record.extra) value = Round6(value);
  return record;
}

}  // namespace fairfrontier
