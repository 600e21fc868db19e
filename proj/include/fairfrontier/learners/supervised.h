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

#ifndef FAIRFRONTIER_LEARNERS_SUPERVISED_H_
#define FAIRFRONTIER_LEARNERS_SUPERVISED_H_

#include <cstdint>
#include <span>

#include "absl/status/statusor.h"
#include "fairfrontier/core/types.h"
#include "fairfrontier/learners/dpl.h"
#include "fairfrontier/learners/model.h"

namespace fairfrontier {

struct TrainOptions {
  int epochs = 30;
  int batch_size = 32;
  double learning_rate = 0.1;
  double l2 = 1e-4;
  double init_stddev = 0.1;
  uint64_t seed = 0;
  // Optional DPL regularizer on a public set (weight 0 disables it).
  double dpl_weight = 0.0;
  DplOptions dpl;
  int num_groups = 2;
};

// Non-private minibatch SGD on cross-entropy, reshuffling every epoch. Used
// for teachers and students. Fails on an empty training set.
absl::StatusOr<Model> TrainSupervised(
    std::span<const LabeledExample> data, const ModelConfig& config,
    const TrainOptions& options,
    std::span<const LabeledExample> public_set = {});

}  // namespace fairfrontier

#endif  // FAIRFRONTIER_LEARNERS_SUPERVISED_H_
