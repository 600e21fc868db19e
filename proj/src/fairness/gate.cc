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

#include "fairfrontier/fairness/gate.h"

#include <algorithm>
#include <cmath>

#include "absl/strings/str_format.h"

namespace fairfrontier {

absl::Status GateParams::Validate() const {
  if (!(rho_fair >= 0.0 && rho_fair <= 1.0)) {
    return absl::InvalidArgumentError("rho_fair must lie in [0, 1]");
  }
  if (min_count < 0) {
    return absl::InvalidArgumentError("min_count must be nonnegative");
  }
  return absl::OkStatus();
}

std::string_view GateDecisionName(GateDecision decision) {
  switch (decision) {
    case GateDecision::kAnswerColdStart:
      return "answer_cold_start";
    case GateDecision::kAnswer:
      return "answer";
    case GateDecision::kReject:
      return "reject";
  }
  return "unknown";
}

std::optional<double> TentativeDisparity(const GroupClassCounter& counts,
                                         GroupId z, ClassId k,
                                         DisparityVariant variant) {
  const double own = static_cast<double>(counts.Get(z, k) + 1) /
                     static_cast<double>(counts.GroupTotal(z) + 1);
  switch (variant) {
    case DisparityVariant::kToOverallNoDoubleCount: {
      const int64_t rest = counts.Total() - counts.GroupTotal(z);
      if (rest == 0) return std::nullopt;
      const int64_t rest_k = counts.ClassTotal(k) - counts.Get(z, k);
      return own - static_cast<double>(rest_k) / static_cast<double>(rest);
    }
    case DisparityVariant::kToOverall:
      return own - static_cast<double>(counts.ClassTotal(k) + 1) /
                       static_cast<double>(counts.Total() + 1);
    case DisparityVariant::kBetweenGroups: {
      std::optional<double> worst;
      for (GroupId other = 0; other < counts.num_groups(); ++other) {
        if (other == z || counts.GroupTotal(other) == 0) continue;
        const double gap = own - static_cast<double>(counts.Get(other, k)) /
                                     static_cast<double>(
                                         counts.GroupTotal(other));
        worst = worst.has_value() ? std::max(*worst, gap) : gap;
      }
      return worst;
    }
  }
  return std::nullopt;
}

GateEvaluation EvaluateGate(const GroupClassCounter& counts, GroupId z,
                            ClassId k, const GateParams& params) {
  GateEvaluation eval;
  if (counts.GroupTotal(z) < params.min_count) {
    eval.decision = GateDecision::kAnswerColdStart;
    return eval;
  }
  eval.condition = TentativeDisparity(counts, z, k, params.variant);
  if (!eval.condition.has_value()) {
    eval.decision = GateDecision::kAnswer;
    eval.empty_comparison = true;
    return eval;
  }
  // A disparity never exceeds 1, so rho_fair >= 1 is no constraint at all.
  const bool within = params.rho_fair >= 1.0 || *eval.condition < params.rho_fair;
  eval.decision = within ? GateDecision::kAnswer : GateDecision::kReject;
  return eval;
}

absl::StatusOr<GateReplaySummary> ReplayGateTrace(
    std::span<const GateTraceEntry> trace, int num_groups, int num_classes,
    const GateParams& params) {
  GateReplaySummary summary{
      .max_condition_at_answer = std::nullopt,
      .final_counts = GroupClassCounter(num_groups, num_classes)};
  GroupClassCounter& counts = summary.final_counts;
  for (size_t i = 0; i < trace.size(); ++i) {
    const GateTraceEntry& entry = trace[i];
    if (entry.group < 0 || entry.group >= num_groups || entry.label < 0 ||
        entry.label >= num_classes) {
      return absl::InvalidArgumentError(
          absl::StrFormat("trace entry %d: (group %d, class %d) out of range",
                          i, entry.group, entry.label));
    }
    const GateEvaluation replay =
        EvaluateGate(counts, entry.group, entry.label, params);
    if (replay.decision != entry.decision) {
      return absl::DataLossError(absl::StrFormat(
          "trace entry %d: recorded %s but replay decides %s", i,
          std::string(GateDecisionName(entry.decision)),
          std::string(GateDecisionName(replay.decision))));
    }
    if (replay.condition != entry.condition) {
      return absl::DataLossError(absl::StrFormat(
          "trace entry %d: recorded condition differs from replay", i));
    }
    switch (entry.decision) {
      case GateDecision::kAnswerColdStart:
        if (counts.GroupTotal(entry.group) >= params.min_count) {
          return absl::DataLossError(absl::StrFormat(
              "trace entry %d: cold-start answer after the threshold", i));
        }
        ++summary.answered_cold_start;
        ++summary.answered;
        counts.Increment(entry.group, entry.label);
        break;
      case GateDecision::kAnswer:
        if (entry.condition.has_value()) {
          if (params.rho_fair < 1.0 && !(*entry.condition < params.rho_fair)) {
            return absl::DataLossError(absl::StrFormat(
                "trace entry %d: answered with condition %g >= rho_fair %g", i,
                *entry.condition, params.rho_fair));
          }
          summary.max_condition_at_answer =
              summary.max_condition_at_answer.has_value()
                  ? std::max(*summary.max_condition_at_answer,
                             *entry.condition)
                  : *entry.condition;
        }
        ++summary.answered;
        counts.Increment(entry.group, entry.label);
        break;
      case GateDecision::kReject:
        ++summary.rejected;
        break;
    }
  }
  return summary;
}

}  // namespace fairfrontier
