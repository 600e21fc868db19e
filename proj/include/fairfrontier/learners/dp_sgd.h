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

#ifndef FAIRFRONTIER_LEARNERS_DP_SGD_H_
#define FAIRFRONTIER_LEARNERS_DP_SGD_H_

#include <cstdint>
#include <span>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "fairfrontier/accounting/rdp.h"
#include "fairfrontier/core/rng.h"
#include "fairfrontier/core/types.h"
#include "fairfrontier/learners/dpl.h"
#include "fairfrontier/learners/model.h"

namespace fairfrontier {

struct DpSgdParams {
  double learning_rate = 0.1;
  // sigma; the Gaussian noise on the summed clipped gradients has standard
  // deviation sigma * clip_norm.
  double noise_multiplier = 1.0;
  // Expected Poisson batch size L; the sampling rate is L / N.
  int64_t expected_batch = 100;
  // C, may be +inf only when noise_multiplier == 0.
  double clip_norm = 1.0;
  int64_t steps = 500;
  double delta = 1e-5;

  absl::Status Validate(size_t dataset_size) const;
  double SamplingRate(size_t dataset_size) const;
};

struct FairRegParams {
  double reg_weight = 0.0;
  DplOptions dpl;
  int num_groups = 2;
};

struct DpSgdResult {
  Model model;
  double epsilon = 0.0;
  int64_t empty_batches = 0;
};

// epsilon after `steps` compositions of the subsampled Gaussian at rate q.
absl::StatusOr<double> DpSgdEpsilon(double q, double noise_multiplier,
                                    int64_t steps, double delta,
                                    std::span<const double> orders);

// Smallest noise multiplier (to a relative 1e-4) whose DpSgdEpsilon is at most
// target_epsilon.
absl::StatusOr<double> CalibrateNoiseMultiplier(double q, int64_t steps,
                                                double delta,
                                                double target_epsilon,
                                                std::span<const double> orders);

// Each step: Poisson-sample the batch (one uniform per example, in order),
// clip every per-example gradient, sum in example order, add noise, divide by
// the realized batch size and descend. Empty batches leave the model alone
// but are still accounted.
absl::StatusOr<DpSgdResult> DpSgdTrain(std::span<const LabeledExample> data,
                                       Model model, const DpSgdParams& params,
                                       SeededRng& rng);

// DpSgdTrain with reg_weight times the DPL gradient on the public set added
// to every per-example gradient before clipping. The DPL gradient is computed
// once per step at the current parameters. The public set is not accounted.
absl::StatusOr<DpSgdResult> FairDpSgdTrain(
    std::span<const LabeledExample> data,
    std::span<const LabeledExample> public_set, Model model,
    const DpSgdParams& params, const FairRegParams& fair, SeededRng& rng);

}  // namespace fairfrontier

#endif  // FAIRFRONTIER_LEARNERS_DP_SGD_H_
