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

#include "fairfrontier/harness/synthetic.h"

#include <cmath>
#include <numeric>

#include "absl/strings/str_format.h"
#include "fairfrontier/core/rng.h"
#include "fairfrontier/core/status_macros.h"

namespace fairfrontier {
namespace {

constexpr uint64_t kMeansStream = 1;
constexpr uint64_t kSampleStream = 2;
constexpr uint64_t kShuffleStream = 3;

bool SumsToOne(const std::vector<double>& w) {
  double sum = 0.0;
  for (double x : w) {
    if (!(x >= 0.0)) return false;
    sum += x;
  }
  return std::abs(sum - 1.0) < 1e-9;
}

// Index i with cumulative weight first exceeding u.
int Categorical(const std::vector<double>& weights, double u) {
  double acc = 0.0;
  for (size_t i = 0; i < weights.size(); ++i) {
    acc += weights[i];
    if (u < acc) return static_cast<int>(i);
  }
  return static_cast<int>(weights.size()) - 1;
}

}  // namespace

absl::Status SyntheticSpec::Validate() const {
  if (num_groups <= 0 || num_classes <= 0) {
    return absl::InvalidArgumentError("Z and K must be positive");
  }
  const int gaussian_dim = group_one_hot ? dim - num_groups : dim;
  if (gaussian_dim <= 0) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "dim %d leaves no room for Gaussian features", dim));
  }
  if (exact_counts.has_value()) {
    if (static_cast<int>(exact_counts->size()) != num_groups) {
      return absl::InvalidArgumentError("exact_counts needs Z rows");
    }
    for (const auto& row : *exact_counts) {
      if (static_cast<int>(row.size()) != num_classes) {
        return absl::InvalidArgumentError("exact_counts rows need K entries");
      }
      for (int64_t c : row) {
        if (c < 0) return absl::InvalidArgumentError("negative exact count");
      }
    }
  } else {
    if (static_cast<int>(group_weights.size()) != num_groups ||
        !SumsToOne(group_weights)) {
      return absl::InvalidArgumentError(
          "group_weights must have Z nonnegative entries summing to 1");
    }
    if (static_cast<int>(group_class_weights.size()) != num_groups) {
      return absl::InvalidArgumentError("group_class_weights needs Z rows");
    }
    for (const auto& row : group_class_weights) {
      if (static_cast<int>(row.size()) != num_classes || !SumsToOne(row)) {
        return absl::InvalidArgumentError(
            "every group_class_weights row needs K entries summing to 1");
      }
    }
  }
  if (TotalCount() < static_cast<int64_t>(num_groups) * num_classes) {
    return absl::InvalidArgumentError(
        absl::StrFormat("n = %d is smaller than Z*K = %d", TotalCount(),
                        num_groups * num_classes));
  }
  if (!(train_fraction >= 0.0 && public_fraction >= 0.0 &&
        train_fraction + public_fraction <= 1.0)) {
    return absl::InvalidArgumentError("split fractions must lie in [0, 1]");
  }
  if (!(noise_scale >= 0.0 && class_separation >= 0.0 && group_shift >= 0.0)) {
    return absl::InvalidArgumentError("scales must be nonnegative");
  }
  return absl::OkStatus();
}

int64_t SyntheticSpec::TotalCount() const {
  if (!exact_counts.has_value()) return n;
  int64_t total = 0;
  for (const auto& row : *exact_counts) {
    total += std::accumulate(row.begin(), row.end(), int64_t{0});
  }
  return total;
}

SyntheticSpec ThreeGroupSpec() {
  SyntheticSpec spec;
  spec.num_groups = 3;
  spec.num_classes = 2;
  spec.group_weights = {1.0 / 3, 1.0 / 3, 1.0 / 3};
  spec.group_class_weights = {{0.5, 0.5}, {0.5, 0.5}, {0.5, 0.5}};
  spec.exact_counts = std::vector<std::vector<int64_t>>{
      {324, 287}, {420, 274}, {445, 250}};
  spec.n = spec.TotalCount();
  return spec;
}

absl::StatusOr<std::vector<LabeledExample>> GenerateExamples(
    const SyntheticSpec& spec) {
  FF_RETURN_IF_ERROR(spec.Validate());
  const int z_count = spec.num_groups;
  const int k_count = spec.num_classes;
  const int gdim = spec.group_one_hot ? spec.dim - z_count : spec.dim;

  SeededRng mean_rng(DeriveSeed(spec.seed, {kMeansStream}));
  std::vector<std::vector<double>> class_means(k_count,
                                               std::vector<double>(gdim));
  std::vector<std::vector<double>> group_offsets(z_count,
                                                 std::vector<double>(gdim));
  for (auto& m : class_means) {
    for (double& v : m) v = mean_rng.Gaussian(spec.class_separation);
  }
  for (auto& m : group_offsets) {
    for (double& v : m) v = mean_rng.Gaussian(spec.group_shift);
  }

  // (group, class) of every sample.
  std::vector<std::pair<GroupId, ClassId>> cells;
  SeededRng rng(DeriveSeed(spec.seed, {kSampleStream}));
  if (spec.exact_counts.has_value()) {
    for (GroupId z = 0; z < z_count; ++z) {
      for (ClassId k = 0; k < k_count; ++k) {
        cells.insert(cells.end(), (*spec.exact_counts)[z][k], {z, k});
      }
    }
  } else {
    cells.reserve(spec.n);
    for (int64_t i = 0; i < spec.n; ++i) {
      const GroupId z = Categorical(spec.group_weights, rng.Uniform());
      const ClassId k =
          Categorical(spec.group_class_weights[z], rng.Uniform());
      cells.emplace_back(z, k);
    }
  }

  std::vector<LabeledExample> out;
  out.reserve(cells.size());
  for (const auto& [z, k] : cells) {
    LabeledExample ex;
    ex.group = z;
    ex.label = k;
    ex.features.resize(spec.dim, 0.0);
    for (int j = 0; j < gdim; ++j) {
      ex.features[j] = class_means[k][j] + group_offsets[z][j] +
                       rng.Gaussian(spec.noise_scale);
    }
    if (spec.group_one_hot) ex.features[gdim + z] = 1.0;
    out.push_back(std::move(ex));
  }
  SeededRng shuffle_rng(DeriveSeed(spec.seed, {kShuffleStream}));
  shuffle_rng.Shuffle(out);
  return out;
}

absl::StatusOr<DatasetSplits> Generate(const SyntheticSpec& spec) {
  FF_ASSIGN_OR_RETURN(std::vector<LabeledExample> all, GenerateExamples(spec));
  DatasetSplits splits;
  splits.dim = spec.dim;
  splits.num_groups = spec.num_groups;
  splits.num_classes = spec.num_classes;
  const size_t n = all.size();
  const size_t n_train =
      static_cast<size_t>(std::floor(spec.train_fraction * n + 1e-9));
  const size_t n_public =
      static_cast<size_t>(std::floor(spec.public_fraction * n + 1e-9));
  for (size_t i = 0; i < n; ++i) {
    if (i < n_train) {
      splits.teacher_train.push_back(std::move(all[i]));
    } else if (i < n_train + n_public) {
      all[i].is_public = true;
      splits.public_unlabeled.push_back(std::move(all[i]));
    } else {
      splits.test.push_back(std::move(all[i]));
    }
  }
  return splits;
}

}  // namespace fairfrontier
