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

#ifndef FAIRFRONTIER_FAIRNESS_GATE_H_
#define FAIRFRONTIER_FAIRNESS_GATE_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "fairfrontier/core/types.h"
#include "fairfrontier/fairness/disparity.h"

namespace fairfrontier {

struct GateParams {
  // Maximum tolerated disparity margin. Values >= 1 impose no constraint.
  double rho_fair = 0.1;
  // Cold-start threshold on the querying group's answered count. 0 disables
  // the cold start.
  int64_t min_count = 20;
  DisparityVariant variant = DisparityVariant::kToOverallNoDoubleCount;

  absl::Status Validate() const;
};

enum class GateDecision { kAnswerColdStart, kAnswer, kReject };

std::string_view GateDecisionName(GateDecision decision);

struct GateEvaluation {
  GateDecision decision = GateDecision::kAnswer;
  // The tentative disparity if (z, k) were answered. Unset during cold start
  // and when the comparison population is empty.
  std::optional<double> condition;
  // Answered only because the comparison population was empty.
  bool empty_comparison = false;

  bool answers() const { return decision != GateDecision::kReject; }
};

// Tentative disparity of group z for class k after one more (z, k) answer:
//   (m(z,k)+1)/(n_z+1) - comparison rate.
// The comparison rate is the rest of the population (kToOverallNoDoubleCount),
// the population including the tentative answer (kToOverall), or the largest
// single other group's rate (kBetweenGroups, signed). Returns nullopt when the
// comparison population is empty.
std::optional<double> TentativeDisparity(const GroupClassCounter& counts,
                                         GroupId z, ClassId k,
                                         DisparityVariant variant);

// Decides whether answering class k for group z keeps the running disparity
// under rho_fair. Never mutates the counter; on an answering decision the
// caller increments m(z, k).
GateEvaluation EvaluateGate(const GroupClassCounter& counts, GroupId z,
                            ClassId k, const GateParams& params);

struct GateTraceEntry {
  GroupId group = 0;
  ClassId label = 0;
  GateDecision decision = GateDecision::kAnswer;
  std::optional<double> condition;
};

using GateTrace = std::vector<GateTraceEntry>;

struct GateReplaySummary {
  int64_t answered = 0;
  int64_t answered_cold_start = 0;
  int64_t rejected = 0;
  // Largest condition value seen on a post-cold-start answer.
  std::optional<double> max_condition_at_answer;
  GroupClassCounter final_counts;
};

// Rebuilds the counter from a recorded trace and re-evaluates every decision.
// Fails if any recorded decision or condition disagrees with the replay, if an
// answer after cold start had a condition >= rho_fair (for rho_fair < 1), or
// if a cold-start answer happened at or above the threshold.
absl::StatusOr<GateReplaySummary> ReplayGateTrace(
    std::span<const GateTraceEntry> trace, int num_groups, int num_classes,
    const GateParams& params);

}  // namespace fairfrontier

#endif  // FAIRFRONTIER_FAIRNESS_GATE_H_
