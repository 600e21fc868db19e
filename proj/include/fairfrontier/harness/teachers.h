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

#ifndef FAIRFRONTIER_HARNESS_TEACHERS_H_
#define FAIRFRONTIER_HARNESS_TEACHERS_H_

#include <cstdint>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "fairfrontier/aggregation/votes.h"
#include "fairfrontier/core/types.h"
#include "fairfrontier/learners/model.h"
#include "fairfrontier/learners/supervised.h"

namespace fairfrontier {

// B contiguous, disjoint shards in input order. The first |data| mod B shards
// hold one extra example. Fails if B > |data| or B < 1.
absl::StatusOr<std::vector<std::vector<LabeledExample>>> PartitionTeachers(
    std::span<const LabeledExample> data, int num_teachers);

class TeacherEnsemble {
 public:
  explicit TeacherEnsemble(std::vector<Model> models)
      : models_(std::move(models)) {}

  const std::vector<Model>& models() const { return models_; }
  size_t size() const { return models_.size(); }
  std::vector<Predictor> Predictors() const;

  absl::StatusOr<VoteHistogram> Votes(std::span<const double> x) const;

 private:
  std::vector<Model> models_;
};

// Trains one model per shard non-privately. Teacher t uses seed
// DeriveSeed(seed, {t}).
absl::StatusOr<TeacherEnsemble> TrainTeachers(
    std::span<const LabeledExample> data, int num_teachers,
    const ModelConfig& config, TrainOptions options, uint64_t seed);

}  // namespace fairfrontier

#endif  // FAIRFRONTIER_HARNESS_TEACHERS_H_
