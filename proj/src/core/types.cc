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

#include "fairfrontier/core/types.h"

#include <algorithm>
#include <cassert>
#include <cmath>

#include "absl/strings/str_format.h"

namespace fairfrontier {

absl::Status ValidateExamples(std::span<const LabeledExample> examples,
                              int dimension, int num_groups, int num_classes) {
  for (size_t i = 0; i < examples.size(); ++i) {
    const LabeledExample& e = examples[i];
    if (static_cast<int>(e.features.size()) != dimension) {
      return absl::InvalidArgumentError(
          absl::StrFormat("example %d has %d features, expected %d", i,
                          e.features.size(), dimension));
    }
    if (e.group < 0 || e.group >= num_groups) {
      return absl::InvalidArgumentError(absl::StrFormat(
          "example %d has group %d outside [0, %d)", i, e.group, num_groups));
    }
    if (e.label < 0 || e.label >= num_classes) {
      return absl::InvalidArgumentError(absl::StrFormat(
          "example %d has label %d outside [0, %d)", i, e.label, num_classes));
    }
  }
  return absl::OkStatus();
}

GroupClassCounter::GroupClassCounter(int num_groups, int num_classes)
    : num_groups_(num_groups),
      num_classes_(num_classes),
      counts_(static_cast<size_t>(num_groups) * num_classes, 0),
      group_totals_(num_groups, 0) {
  assert(num_groups > 0 && num_classes > 0);
}

int64_t GroupClassCounter::Get(GroupId z, ClassId k) const {
  assert(z >= 0 && z < num_groups_ && k >= 0 && k < num_classes_);
  return counts_[static_cast<size_t>(z) * num_classes_ + k];
}

void GroupClassCounter::Increment(GroupId z, ClassId k) {
  assert(z >= 0 && z < num_groups_ && k >= 0 && k < num_classes_);
  ++counts_[static_cast<size_t>(z) * num_classes_ + k];
  ++group_totals_[z];
  ++total_;
}

int64_t GroupClassCounter::GroupTotal(GroupId z) const {
  assert(z >= 0 && z < num_groups_);
  return group_totals_[z];
}

int64_t GroupClassCounter::ClassTotal(ClassId k) const {
  int64_t sum = 0;
  for (int z = 0; z < num_groups_; ++z) sum += Get(z, k);
  return sum;
}

absl::StatusOr<VoteHistogram> VoteHistogram::Create(
    std::vector<int64_t> votes) {
  if (votes.empty()) {
    return absl::InvalidArgumentError("vote histogram needs at least 1 class");
  }
  int64_t total = 0;
  for (int64_t v : votes) {
    if (v < 0) return absl::InvalidArgumentError("negative vote count");
    total += v;
  }
  if (total <= 0) {
    return absl::InvalidArgumentError("vote histogram has no teachers");
  }
  return VoteHistogram(std::move(votes), total);
}

ClassId VoteHistogram::Plurality() const {
  // max_element returns the first maximum, i.e. the lowest class id.
  return static_cast<ClassId>(
      std::max_element(votes_.begin(), votes_.end()) - votes_.begin());
}

int64_t VoteHistogram::MaxVotes() const {
  return *std::max_element(votes_.begin(), votes_.end());
}

absl::Status PrivacyBudget::Validate() const {
  if (!(epsilon >= 0.0)) {
    return absl::InvalidArgumentError("epsilon must be nonnegative");
  }
  if (!(delta >= 0.0 && delta <= 1.0)) {
    return absl::InvalidArgumentError("delta must lie in [0, 1]");
  }
  return absl::OkStatus();
}

std::string_view FrameworkName(Framework framework) {
  switch (framework) {
    case Framework::kFairPate:
      return "fairpate";
    case Framework::kFairDpSgd:
      return "fairdpsgd";
    case Framework::kPatePre:
      return "pate_pre";
    case Framework::kPateIn:
      return "pate_in";
  }
  return "unknown";
}

absl::StatusOr<Framework> ParseFramework(std::string_view name) {
  for (Framework f : {Framework::kFairPate, Framework::kFairDpSgd,
                      Framework::kPatePre, Framework::kPateIn}) {
    if (FrameworkName(f) == name) return f;
  }
  return absl::InvalidArgumentError(
      absl::StrFormat("unknown framework '%s'", std::string(name)));
}

bool ExperimentRecord::HasFlag(std::string_view flag) const {
  return std::find(flags.begin(), flags.end(), flag) != flags.end();
}

}  // namespace fairfrontier
