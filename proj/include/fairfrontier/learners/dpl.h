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

#ifndef FAIRFRONTIER_LEARNERS_DPL_H_
#define FAIRFRONTIER_LEARNERS_DPL_H_

#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "fairfrontier/core/types.h"
#include "fairfrontier/fairness/disparity.h"
#include "fairfrontier/learners/model.h"

namespace fairfrontier {

struct DplOptions {
  // Softmax temperature for the soft prediction rates.
  double temperature = 0.01;
  DisparityVariant variant = DisparityVariant::kToOverallNoDoubleCount;
  DisparityReduction reduction = DisparityReduction::kSigned;
};

struct DplResult {
  double loss = 0.0;
  std::vector<double> gradient;
};

// Demographic-parity loss over a public set: the disparity estimator with
// each indicator [y_hat = k] replaced by the tempered-softmax probability of
// class k, reduced by max over (z, k). The gradient is a subgradient at the
// maximizing entries, averaged when several entries tie.
//
// Fails when every entry is undefined (e.g. a single-group public set under
// the default variant) or the temperature is not positive.
absl::StatusOr<DplResult> Dpl(const Model& model,
                              std::span<const LabeledExample> public_set,
                              int num_groups, const DplOptions& options);

// Loss only.
absl::StatusOr<double> DplLoss(const Model& model,
                               std::span<const LabeledExample> public_set,
                               int num_groups, const DplOptions& options);

}  // namespace fairfrontier

#endif  // FAIRFRONTIER_LEARNERS_DPL_H_
