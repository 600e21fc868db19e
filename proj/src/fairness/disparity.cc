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

#include "fairfrontier/fairness/disparity.h"

#include <algorithm>
#include <cassert>
#include <cmath>

#include "absl/strings/str_format.h"

namespace fairfrontier {

std::string_view DisparityVariantName(DisparityVariant variant) {
  switch (variant) {
    case DisparityVariant::kBetweenGroups:
      return "between_groups";
    case DisparityVariant::kToOverall:
      return "to_overall";
    case DisparityVariant::kToOverallNoDoubleCount:
      return "to_overall_no_double_count";
  }
  return "unknown";
}

absl::StatusOr<DisparityVariant> ParseDisparityVariant(std::string_view name) {
  for (DisparityVariant v :
       {DisparityVariant::kBetweenGroups, DisparityVariant::kToOverall,
        DisparityVariant::kToOverallNoDoubleCount}) {
    if (DisparityVariantName(v) == name) return v;
  }
  return absl::InvalidArgumentError(
      absl::StrFormat("unknown disparity variant '%s'", std::string(name)));
}

DisparityMatrix::DisparityMatrix(int num_groups, int num_classes)
    : num_groups_(num_groups),
      num_classes_(num_classes),
      values_(static_cast<size_t>(num_groups) * num_classes) {}

std::optional<double> DisparityMatrix::at(GroupId z, ClassId k) const {
  assert(z >= 0 && z < num_groups_ && k >= 0 && k < num_classes_);
  return values_[static_cast<size_t>(z) * num_classes_ + k];
}

void DisparityMatrix::set(GroupId z, ClassId k, std::optional<double> value) {
  assert(z >= 0 && z < num_groups_ && k >= 0 && k < num_classes_);
  values_[static_cast<size_t>(z) * num_classes_ + k] = value;
}

bool DisparityMatrix::AnyUndefined() const {
  return std::any_of(values_.begin(), values_.end(),
                     [](const auto& v) { return !v.has_value(); });
}

bool DisparityMatrix::AllUndefined() const {
  return std::none_of(values_.begin(), values_.end(),
                      [](const auto& v) { return v.has_value(); });
}

absl::StatusOr<DisparityMatrix> ComputeDisparityMatrix(
    std::span<const ClassId> predictions, std::span<const GroupId> groups,
    int num_groups, int num_classes, DisparityVariant variant) {
  if (predictions.size() != groups.size()) {
    return absl::InvalidArgumentError(
        absl::StrFormat("disparity: %d predictions vs %d group ids",
                        predictions.size(), groups.size()));
  }
  if (num_groups <= 0 || num_classes <= 0) {
    return absl::InvalidArgumentError("disparity: Z and K must be positive");
  }
  GroupClassCounter counts(num_groups, num_classes);
  for (size_t i = 0; i < predictions.size(); ++i) {
    if (groups[i] < 0 || groups[i] >= num_groups || predictions[i] < 0 ||
        predictions[i] >= num_classes) {
      return absl::InvalidArgumentError(absl::StrFormat(
          "disparity: entry %d has (group %d, class %d) outside the declared "
          "Z=%d, K=%d",
          i, groups[i], predictions[i], num_groups, num_classes));
    }
    counts.Increment(groups[i], predictions[i]);
  }

  auto rate = [&](GroupId z, ClassId k) {
    return static_cast<double>(counts.Get(z, k)) /
           static_cast<double>(counts.GroupTotal(z));
  };

  DisparityMatrix matrix(num_groups, num_classes);
  const int64_t total = counts.Total();
  for (GroupId z = 0; z < num_groups; ++z) {
    const int64_t n_z = counts.GroupTotal(z);
    if (n_z == 0) continue;
    for (ClassId k = 0; k < num_classes; ++k) {
      const double r_z = rate(z, k);
      switch (variant) {
        case DisparityVariant::kToOverallNoDoubleCount: {
          const int64_t rest = total - n_z;
          if (rest == 0) break;
          const double r_rest =
              static_cast<double>(counts.ClassTotal(k) - counts.Get(z, k)) /
              static_cast<double>(rest);
          matrix.set(z, k, r_z - r_rest);
          break;
        }
        case DisparityVariant::kToOverall:
          matrix.set(z, k,
                     r_z - static_cast<double>(counts.ClassTotal(k)) /
                               static_cast<double>(total));
          break;
        case DisparityVariant::kBetweenGroups: {
          std::optional<double> worst;
          for (GroupId other = 0; other < num_groups; ++other) {
            if (other == z || counts.GroupTotal(other) == 0) continue;
            const double gap = std::abs(r_z - rate(other, k));
            worst = worst.has_value() ? std::max(*worst, gap) : gap;
          }
          matrix.set(z, k, worst);
          break;
        }
      }
    }
  }
  return matrix;
}

absl::StatusOr<double> MaxDisparity(const DisparityMatrix& matrix,
                                    DisparityReduction reduction) {
  std::optional<double> best;
  for (GroupId z = 0; z < matrix.num_groups(); ++z) {
    for (ClassId k = 0; k < matrix.num_classes(); ++k) {
      std::optional<double> v = matrix.at(z, k);
      if (!v.has_value()) continue;
      const double x =
          reduction == DisparityReduction::kAbsolute ? std::abs(*v) : *v;
      best = best.has_value() ? std::max(*best, x) : x;
    }
  }
  if (!best.has_value()) {
    return absl::FailedPreconditionError(
        "max disparity: every matrix entry is undefined");
  }
  return *best;
}

}  // namespace fairfrontier
