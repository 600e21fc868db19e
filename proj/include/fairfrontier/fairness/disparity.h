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

#ifndef FAIRFRONTIER_FAIRNESS_DISPARITY_H_
#define FAIRFRONTIER_FAIRNESS_DISPARITY_H_

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "fairfrontier/core/types.h"

namespace fairfrontier {

// How a subgroup's class rate is compared with the rest of the population.
//   kBetweenGroups:           max over other nonempty groups of |r_z - r_z'|.
//   kToOverall:               r_z - P[Y_hat = k].
//   kToOverallNoDoubleCount:  r_z - P[Y_hat = k | Z != z].  (default)
enum class DisparityVariant { kBetweenGroups, kToOverall, kToOverallNoDoubleCount };

std::string_view DisparityVariantName(DisparityVariant variant);
absl::StatusOr<DisparityVariant> ParseDisparityVariant(std::string_view name);

// Estimated demographic disparity indexed by (group, class). Entries whose
// group or comparison population is empty are undefined.
class DisparityMatrix {
 public:
  DisparityMatrix(int num_groups, int num_classes);

  int num_groups() const { return num_groups_; }
  int num_classes() const { return num_classes_; }

  std::optional<double> at(GroupId z, ClassId k) const;
  void set(GroupId z, ClassId k, std::optional<double> value);

  bool AnyUndefined() const;
  bool AllUndefined() const;

 private:
  int num_groups_;
  int num_classes_;
  std::vector<std::optional<double>> values_;
};

absl::StatusOr<DisparityMatrix> ComputeDisparityMatrix(
    std::span<const ClassId> predictions, std::span<const GroupId> groups,
    int num_groups, int num_classes,
    DisparityVariant variant = DisparityVariant::kToOverallNoDoubleCount);

enum class DisparityReduction {
  kSigned,    // max over (z, k) of the signed entries
  kAbsolute,  // max over (z, k) of |entry|
};

// Max over defined entries. Fails when every entry is undefined.
absl::StatusOr<double> MaxDisparity(
    const DisparityMatrix& matrix,
    DisparityReduction reduction = DisparityReduction::kSigned);

}  // namespace fairfrontier

#endif  // FAIRFRONTIER_FAIRNESS_DISPARITY_H_
