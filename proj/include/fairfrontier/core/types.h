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

#ifndef FAIRFRONTIER_CORE_TYPES_H_
#define FAIRFRONTIER_CORE_TYPES_H_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"

namespace fairfrontier {

using GroupId = int;
using ClassId = int;

// A model or aggregator output. std::nullopt is the rejection symbol; no class
// id is ever reserved to mean "rejected".
using Prediction = std::optional<ClassId>;

struct LabeledExample {
  std::vector<double> features;
  GroupId group = 0;
  ClassId label = 0;
  bool is_public = false;
};

// Checks every example against the declared shape (dimension, Z, K).
absl::Status ValidateExamples(std::span<const LabeledExample> examples,
                              int dimension, int num_groups, int num_classes);

// Subpopulation-class counts m(z, k). Dense row-major storage; one instance
// per run, never shared between threads.
class GroupClassCounter {
 public:
  GroupClassCounter(int num_groups, int num_classes);

  int num_groups() const { return num_groups_; }
  int num_classes() const { return num_classes_; }

  int64_t Get(GroupId z, ClassId k) const;
  void Increment(GroupId z, ClassId k);

  int64_t GroupTotal(GroupId z) const;
  int64_t ClassTotal(ClassId k) const;
  int64_t Total() const { return total_; }

  friend bool operator==(const GroupClassCounter&,
                         const GroupClassCounter&) = default;

 private:
  int num_groups_;
  int num_classes_;
  std::vector<int64_t> counts_;
  std::vector<int64_t> group_totals_;
  int64_t total_ = 0;
};

// Teacher vote counts n_j for one query.
class VoteHistogram {
 public:
  static absl::StatusOr<VoteHistogram> Create(std::vector<int64_t> votes);

  std::span<const int64_t> votes() const { return votes_; }
  int num_classes() const { return static_cast<int>(votes_.size()); }
  int64_t teacher_count() const { return teacher_count_; }

  // Index of the largest count, lowest id on ties.
  ClassId Plurality() const;
  int64_t MaxVotes() const;

 private:
  explicit VoteHistogram(std::vector<int64_t> votes, int64_t teacher_count)
      : votes_(std::move(votes)), teacher_count_(teacher_count) {}

  std::vector<int64_t> votes_;
  int64_t teacher_count_;
};

struct PrivacyBudget {
  double epsilon = 0.0;
  double delta = 0.0;

  absl::Status Validate() const;
};

enum class Framework { kFairPate, kFairDpSgd, kPatePre, kPateIn };

std::string_view FrameworkName(Framework framework);
absl::StatusOr<Framework> ParseFramework(std::string_view name);

// One grid cell of an experiment: specification, achieved values and metrics.
// fairness_spec is the gamma constraint for the PATE frameworks and the DPL
// regularization weight for kFairDpSgd.
struct ExperimentRecord {
  Framework framework = Framework::kFairPate;
  double eps_spec = 0.0;
  double fairness_spec = 0.0;
  double eps_achieved = 0.0;
  double max_disparity = 0.0;
  double accuracy = 0.0;
  double coverage = 0.0;
  uint64_t seed = 0;
  // Diagnostic markers such as "accuracy_undefined" or
  // "disparity_undefined". Not part of the dominance relation.
  std::vector<std::string> flags;
  // Auxiliary diagnostics (e.g. "inference_coverage", "queries_answered").
  // Not part of the dominance relation.
  std::map<std::string, double> extra;

  bool HasFlag(std::string_view flag) const;

  friend bool operator==(const ExperimentRecord&,
                         const ExperimentRecord&) = default;
};

}  // namespace fairfrontier

#endif  // FAIRFRONTIER_CORE_TYPES_H_
