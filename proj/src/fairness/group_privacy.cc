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

#include "fairfrontier/fairness/group_privacy.h"

#include <algorithm>
#include <cmath>

#include "fairfrontier/core/status_macros.h"

namespace fairfrontier {

absl::StatusOr<int> KGamma(double gamma) {
  if (!(gamma >= 0.0 && gamma < 1.0)) {
    return absl::InvalidArgumentError("gamma must lie in [0, 1)");
  }
  const double ratio = 2.0 * gamma / (1.0 - gamma);
  if (ratio > 1e9) return absl::OutOfRangeError("gamma too close to 1");
  return 2 + static_cast<int>(std::ceil(ratio));
}

absl::StatusOr<PrivacyBudget> GroupPrivacyTransform(const PrivacyBudget& budget,
                                                    double gamma) {
  FF_RETURN_IF_ERROR(budget.Validate());
  FF_ASSIGN_OR_RETURN(const int k, KGamma(gamma));
  const double eps = k * budget.epsilon;
  return PrivacyBudget{.epsilon = eps,
                       .delta = std::min(1.0, k * std::exp(eps) * budget.delta)};
}

}  // namespace fairfrontier
