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

#ifndef FAIRFRONTIER_FAIRNESS_GROUP_PRIVACY_H_
#define FAIRFRONTIER_FAIRNESS_GROUP_PRIVACY_H_

#include "absl/status/statusor.h"
#include "fairfrontier/core/types.h"

namespace fairfrontier {

// Group size K_gamma = 2 + ceil(2 gamma / (1 - gamma)): the largest number of
// output points the ordered offline pre-processor can change when one input
// point is added. gamma must lie in [0, 1).
absl::StatusOr<int> KGamma(double gamma);

// (eps, delta) -> (K eps, K e^{K eps} delta), delta clamped to 1.
absl::StatusOr<PrivacyBudget> GroupPrivacyTransform(const PrivacyBudget& budget,
                                                    double gamma);

}  // namespace fairfrontier

#endif  // FAIRFRONTIER_FAIRNESS_GROUP_PRIVACY_H_
