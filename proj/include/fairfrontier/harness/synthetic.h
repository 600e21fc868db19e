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

#ifndef FAIRFRONTIER_HARNESS_SYNTHETIC_H_
#define FAIRFRONTIER_HARNESS_SYNTHETIC_H_

#include <cstdint>
#include <optional>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "fairfrontier/core/types.h"

namespace fairfrontier {

// Gaussian mixture with one component per (group, class).
//
// Component mean: mu_k + delta_z, where mu_k ~ N(0, class_separation^2 I)
// and delta_z ~ N(0, group_shift^2 I) are drawn from the spec seed. Samples
// add N(0, noise_scale^2 I). With group_one_hot the last Z coordinates of
// every feature vector are the one-hot group code, so the Gaussian part has
// dim - Z coordinates.
struct SyntheticSpec {
  int dim = 20;
  int num_groups = 2;
  int num_classes = 2;
  int64_t n = 20000;
  // P(Z = z). Must sum to 1.
  std::vector<double> group_weights = {0.6, 0.4};
  // Row z is P(Y = k | Z = z). Rows must sum to 1.
  std::vector<std::vector<double>> group_class_weights = {{0.3, 0.7},
                                                          {0.7, 0.3}};
  // If set, exact per-(group, class) counts replace the two weight tables and
  // n. Indexed [z][k].
  std::optional<std::vector<std::vector<int64_t>>> exact_counts;
  double class_separation = 0.5;
  double group_shift = 0.5;
  double noise_scale = 1.0;
  bool group_one_hot = true;
  uint64_t seed = 0;
  // Teacher-train / public / test proportions.
  double train_fraction = 0.8;
  double public_fraction = 0.1;

  absl::Status Validate() const;
  // Total sample count, from exact_counts when set.
  int64_t TotalCount() const;
};

// Three-group, two-class population with fixed counts:
// class 0 = (324, 420, 445), class 1 = (287, 274, 250) for groups 0, 1, 2.
SyntheticSpec ThreeGroupSpec();

struct DatasetSplits {
  int dim = 0;
  int num_groups = 0;
  int num_classes = 0;
  std::vector<LabeledExample> teacher_train;
  // Labels are kept for evaluation only; is_public is set.
  std::vector<LabeledExample> public_unlabeled;
  std::vector<LabeledExample> test;
};

// Deterministic in spec (including spec.seed). Samples are shuffled before
// splitting.
absl::StatusOr<std::vector<LabeledExample>> GenerateExamples(
    const SyntheticSpec& spec);
absl::StatusOr<DatasetSplits> Generate(const SyntheticSpec& spec);

}  // namespace fairfrontier

#endif  // FAIRFRONTIER_HARNESS_SYNTHETIC_H_
