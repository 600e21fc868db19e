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

#ifndef FAIRFRONTIER_HARNESS_GRID_H_
#define FAIRFRONTIER_HARNESS_GRID_H_

#include <cstdint>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "fairfrontier/core/types.h"
#include "fairfrontier/fairness/gate.h"
#include "fairfrontier/harness/experiments.h"
#include "fairfrontier/harness/synthetic.h"

namespace fairfrontier {

struct GridSpec {
  Framework framework = Framework::kFairPate;
  std::vector<double> eps_values = {1.0, 2.0, 3.0};
  // gamma for the PATE frameworks, the DPL weight for kFairDpSgd.
  std::vector<double> fairness_values = {0.01, 0.05, 0.1};
  // Replicate seeds; each gets its own data draw and teachers.
  std::vector<uint64_t> seeds = {1};
  std::string dataset = "synthetic";
  SyntheticSpec data;
  TeacherConfig teachers;
  PateConfig pate;
  DpSgdConfig dpsgd;

  absl::Status Validate() const;
  size_t CellCount() const {
    return seeds.size() * eps_values.size() * fairness_values.size();
  }
};

struct GridCellResult {
  size_t index = 0;
  ExperimentRecord record;
  // Empty for kFairDpSgd.
  std::string ledger_csv;
  GateTrace aggregation_trace;
  GateTrace inference_trace;
  GateParams aggregation_gate;
  GateParams inference_gate;
};

struct GridResult {
  // Ordered by (seed, eps, fairness) in GridSpec order.
  std::vector<GridCellResult> cells;

  std::vector<ExperimentRecord> Records() const;
};

// The synthetic spec RunGrid uses for replicate seed `replica_seed`.
SyntheticSpec ReplicaDataSpec(const GridSpec& spec, uint64_t master_seed,
                              uint64_t replica_seed);

// Runs every (seed, eps, fairness) cell, up to `jobs` at a time. For
// replicate seed s the data, teacher and run seeds are derived from
// (master_seed, s); the run seed does not depend on the (eps, fairness)
// coordinates, so cells of one replicate share their query noise. Output is
// independent of `jobs`.
absl::StatusOr<GridResult> RunGrid(const GridSpec& spec, uint64_t master_seed,
                                   int jobs = 1);

}  // namespace fairfrontier

#endif  // FAIRFRONTIER_HARNESS_GRID_H_
