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

#ifndef FAIRFRONTIER_AGGREGATION_VOTES_H_
#define FAIRFRONTIER_AGGREGATION_VOTES_H_

#include <functional>
#include <span>

#include "absl/status/statusor.h"
#include "fairfrontier/core/types.h"

namespace fairfrontier {

using Predictor = std::function<ClassId(std::span<const double>)>;

// One vote per teacher on x.
absl::StatusOr<VoteHistogram> CollectVotes(std::span<const Predictor> teachers,
                                           std::span<const double> x,
                                           int num_classes);

}  // namespace fairfrontier

#endif  // FAIRFRONTIER_AGGREGATION_VOTES_H_
