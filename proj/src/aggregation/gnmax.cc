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

#include "fairfrontier/aggregation/gnmax.h"

#include <cmath>

namespace fairfrontier {

absl::Status AggregatorParams::Validate() const {
  if (!(std::isfinite(threshold) && threshold >= 0.0)) {
    return absl::InvalidArgumentError("threshold must be finite and >= 0");
  }
  if (!(std::isfinite(sigma1) && sigma1 >= 0.0) ||
      !(std::isfinite(sigma2) && sigma2 >= 0.0)) {
    return absl::InvalidArgumentError("sigma1 and sigma2 must be finite and >= 0");
  }
  return gate.Validate();
}

std::string_view RejectedByName(RejectedBy reason) {
  switch (reason) {
    case RejectedBy::kNone:
      return "none";
    case RejectedBy::kConsensus:
      return "consensus";
    case RejectedBy::kFairness:
      return "fairness";
  }
  return "unknown";
}

AggregationOutcome ConfidentGnmax(const VoteHistogram& hist,
                                  const AggregatorParams& params,
                                  SeededRng& rng) {
  AggregationOutcome outcome;
  const double noisy_max =
      static_cast<double>(hist.MaxVotes()) + rng.Gaussian(params.sigma1);
  if (noisy_max < params.threshold) {
    outcome.rejected_by = RejectedBy::kConsensus;
    return outcome;
  }
  const auto votes = hist.votes();
  ClassId best = 0;
  double best_value = 0.0;
  for (ClassId k = 0; k < hist.num_classes(); ++k) {
    const double value =
        static_cast<double>(votes[k]) + rng.Gaussian(params.sigma2);
    if (k == 0 || value > best_value) {
      best = k;
      best_value = value;
    }
  }
  outcome.noisy_argmax_computed = true;
  outcome.noisy_argmax = best;
  outcome.result = best;
  return outcome;
}

AggregationOutcome ConfidentFairGnmax(const VoteHistogram& hist, GroupId z,
                                      GroupClassCounter& counts,
                                      const AggregatorParams& params,
                                      SeededRng& rng) {
  AggregationOutcome outcome = ConfidentGnmax(hist, params, rng);
  if (!outcome.noisy_argmax_computed) return outcome;
  const ClassId k = *outcome.noisy_argmax;
  outcome.gate = EvaluateGate(counts, z, k, params.gate);
  if (outcome.gate->answers()) {
    counts.Increment(z, k);
  } else {
    outcome.result.reset();
    outcome.rejected_by = RejectedBy::kFairness;
  }
  return outcome;
}

}  // namespace fairfrontier
