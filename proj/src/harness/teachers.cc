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

#include "fairfrontier/harness/teachers.h"

#include "absl/strings/str_format.h"
#include "fairfrontier/core/rng.h"
#include "fairfrontier/core/status_macros.h"

namespace fairfrontier {

absl::StatusOr<std::vector<std::vector<LabeledExample>>> PartitionTeachers(
    std::span<const LabeledExample> data, int num_teachers) {
  if (num_teachers < 1) {
    return absl::InvalidArgumentError("need at least one teacher");
  }
  if (static_cast<size_t>(num_teachers) > data.size()) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "%d teachers but only %d examples", num_teachers, data.size()));
  }
  const size_t base = data.size() / num_teachers;
  const size_t extra = data.size() % num_teachers;
  std::vector<std::vector<LabeledExample>> shards(num_teachers);
  size_t pos = 0;
  for (size_t t = 0; t < shards.size(); ++t) {
    const size_t len = base + (t < extra ? 1 : 0);
    shards[t].assign(data.begin() + pos, data.begin() + pos + len);
    pos += len;
  }
  return shards;
}

std::vector<Predictor> TeacherEnsemble::Predictors() const {
  std::vector<Predictor> out;
  out.reserve(models_.size());
  for (const Model& m : models_) {
    out.push_back([&m](std::span<const double> x) { return m.Predict(x); });
  }
  return out;
}

absl::StatusOr<VoteHistogram> TeacherEnsemble::Votes(
    std::span<const double> x) const {
  if (models_.empty()) return absl::FailedPreconditionError("no teachers");
  std::vector<int64_t> votes(models_.front().num_classes(), 0);
  for (const Model& m : models_) ++votes[m.Predict(x)];
  return VoteHistogram::Create(std::move(votes));
}

absl::StatusOr<TeacherEnsemble> TrainTeachers(
    std::span<const LabeledExample> data, int num_teachers,
    const ModelConfig& config, TrainOptions options, uint64_t seed) {
  FF_ASSIGN_OR_RETURN(auto shards, PartitionTeachers(data, num_teachers));
  std::vector<Model> models;
  models.reserve(shards.size());
  for (size_t t = 0; t < shards.size(); ++t) {
    options.seed = DeriveSeed(seed, {t});
    FF_ASSIGN_OR_RETURN(Model m, TrainSupervised(shards[t], config, options));
    models.push_back(std::move(m));
  }
  return TeacherEnsemble(std::move(models));
}

}  // namespace fairfrontier
