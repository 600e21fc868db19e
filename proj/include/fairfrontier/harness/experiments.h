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

#ifndef FAIRFRONTIER_HARNESS_EXPERIMENTS_H_
#define FAIRFRONTIER_HARNESS_EXPERIMENTS_H_

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "fairfrontier/accounting/budget_tracker.h"
#include "fairfrontier/aggregation/gnmax.h"
#include "fairfrontier/core/types.h"
#include "fairfrontier/fairness/gate.h"
#include "fairfrontier/harness/synthetic.h"
#include "fairfrontier/harness/teachers.h"
#include "fairfrontier/learners/dp_sgd.h"
#include "fairfrontier/learners/model.h"
#include "fairfrontier/learners/supervised.h"

namespace fairfrontier {

struct TeacherConfig {
  int num_teachers = 200;
  ModelConfig model;  // dim and num_classes are taken from the data
  TrainOptions train;
};

// Cell-independent part of a PATE-family run: the data, the trained teachers'
// votes on every public query, and a reference teacher-ensemble accuracy.
struct PateSetup {
  DatasetSplits splits;
  std::vector<VoteHistogram> public_votes;
  int num_teachers = 0;
};

absl::StatusOr<PateSetup> PreparePate(DatasetSplits splits,
                                      const TeacherConfig& teachers,
                                      uint64_t seed);

struct PateConfig {
  // threshold, sigma1, sigma2 and the gate's min_count and variant. The
  // gate's rho_fair is replaced by the cell's gamma.
  AggregatorParams aggregator;
  double delta = 1e-5;
  // Length of the public query stream; 0 uses the whole public split.
  int64_t max_queries = 1000;
  bool charge_fairness_rejected = true;
  bool data_dependent = true;
  ModelConfig student;
  TrainOptions student_train;
  // Apply the inference-time gate to student predictions on the test set.
  bool use_postprocessor = true;
  // DPL weight of the student in the in-processing placement.
  double student_dpl_weight = 1.0;
  DplOptions student_dpl{.temperature = 0.1};
};

enum class Placement {
  kFairAggregator,   // fairness gate inside the aggregator
  kPreProcessing,    // plain aggregator, then the stream pre-processor
  kInProcessing,     // plain aggregator, then a DPL-regularized student
};

std::string_view PlacementName(Placement placement);

struct PateRun {
  ExperimentRecord record;
  std::optional<BudgetTracker> tracker;
  // Gate decisions inside the aggregator (kFairAggregator only).
  GateTrace aggregation_trace;
  GateParams aggregation_gate;
  // Gate decisions of the inference-time post-processor.
  GateTrace inference_trace;
  // (group, label) counts of answered aggregator queries.
  std::optional<GroupClassCounter> answered_counts;
  std::vector<LabeledExample> student_train;
  std::optional<Model> student;
};

// Streams the public queries through the aggregator until the stream ends
// or the next query could exceed eps_target, trains the student and evaluates
// it on the test split. `seed` drives the aggregator noise and the student.
//
// Record fields: coverage is the fraction of public queries the aggregator
// answered; extra["inference_coverage"] is the post-processor acceptance
// rate on the test split; accuracy and max_disparity are measured on the
// answered test predictions.
absl::StatusOr<PateRun> RunPate(const PateSetup& setup, const PateConfig& config,
                                Placement placement, double eps_target,
                                double gamma, uint64_t seed);

absl::StatusOr<PateRun> RunFairPate(const PateSetup& setup,
                                    const PateConfig& config, double eps_target,
                                    double gamma, uint64_t seed);

struct DpSgdConfig {
  // noise_multiplier is calibrated from the cell's epsilon target.
  DpSgdParams dp{.learning_rate = 0.5,
                 .noise_multiplier = 1.0,
                 .expected_batch = 256,
                 .clip_norm = 1.0,
                 .steps = 300,
                 .delta = 1e-5};
  ModelConfig model;
  double init_stddev = 0.1;
  DplOptions dpl{.temperature = 0.1};
  // Inference-time post-processor.
  bool use_postprocessor = true;
  GateParams postprocessor{.rho_fair = 0.1};
};

struct DpSgdRun {
  ExperimentRecord record;
  double noise_multiplier = 0.0;
  GateTrace inference_trace;
  std::optional<Model> model;
};

// Trains on the teacher split with the DPL regularizer computed on the public
// split. Coverage is the inference-time acceptance rate on the test split.
absl::StatusOr<DpSgdRun> RunFairDpSgd(const DatasetSplits& splits,
                                      const DpSgdConfig& config,
                                      double eps_target, double reg_weight,
                                      uint64_t seed);

}  // namespace fairfrontier

#endif  // FAIRFRONTIER_HARNESS_EXPERIMENTS_H_
