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

#ifndef FAIRFRONTIER_AGGREGATION_GNMAX_H_
#define FAIRFRONTIER_AGGREGATION_GNMAX_H_

#include <optional>
#include <string_view>

#include "absl/status/status.h"
#include "fairfrontier/core/rng.h"
#include "fairfrontier/core/types.h"
#include "fairfrontier/fairness/gate.h"

namespace fairfrontier {

struct AggregatorParams {
  // Consensus threshold on the noisy maximum vote count.
  double threshold = 120.0;
  // Noise on the threshold check.
  double sigma1 = 110.0;
  // Noise on each class count in the argmax.
  double sigma2 = 20.0;
  // Used by ConfidentFairGnmax only.
  GateParams gate;

  absl::Status Validate() const;
};

enum class RejectedBy { kNone, kConsensus, kFairness };

std::string_view RejectedByName(RejectedBy reason);

struct AggregationOutcome {
  Prediction result;
  RejectedBy rejected_by = RejectedBy::kNone;
  bool noisy_argmax_computed = false;
  // The noisy argmax label, set whenever noisy_argmax_computed.
  std::optional<ClassId> noisy_argmax;
  // Gate evaluation for ConfidentFairGnmax once the consensus check passed.
  std::optional<GateEvaluation> gate;

  bool answered() const { return result.has_value(); }
};

// Noise draws happen in a fixed order: one threshold draw, then one draw per
// class 0..K-1 if the check passes. Ties in the noisy argmax go to the lowest
// class id.
AggregationOutcome ConfidentGnmax(const VoteHistogram& hist,
                                  const AggregatorParams& params,
                                  SeededRng& rng);

// ConfidentGnmax followed by the fairness gate for group z on the noisy
// argmax. Answers increment counts(z, label).
AggregationOutcome ConfidentFairGnmax(const VoteHistogram& hist, GroupId z,
                                      GroupClassCounter& counts,
                                      const AggregatorParams& params,
                                      SeededRng& rng);

}  // namespace fairfrontier

#endif  // FAIRFRONTIER_AGGREGATION_GNMAX_H_
