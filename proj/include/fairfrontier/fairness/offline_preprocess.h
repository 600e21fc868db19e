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

#ifndef FAIRFRONTIER_FAIRNESS_OFFLINE_PREPROCESS_H_
#define FAIRFRONTIER_FAIRNESS_OFFLINE_PREPROCESS_H_

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "fairfrontier/core/types.h"

namespace fairfrontier {

// Strict total order over examples ("a comes before b").
using ExampleOrder =
    std::function<bool(const LabeledExample&, const LabeledExample&)>;

// Lexicographic over features, then group, then label.
bool LexicographicBefore(const LabeledExample& a, const LabeledExample& b);

// Largest majority-subgroup size allowed next to a minority of size m:
// m + floor(2 gamma m / (1 - gamma)).
int64_t MajorityCap(int64_t minority_size, double gamma);

// Two-group balancing filter. For each label, the larger group is cut down to
// MajorityCap(smaller group size) by dropping its latest examples under
// `order`. Returns the indices of kept examples in ascending input order.
// Requires every group id to be 0 or 1 and gamma in [0, 1).
absl::StatusOr<std::vector<size_t>> OrderedOfflinePreprocess(
    std::span<const LabeledExample> data, double gamma,
    const ExampleOrder& order = LexicographicBefore);

}  // namespace fairfrontier

#endif  // FAIRFRONTIER_FAIRNESS_OFFLINE_PREPROCESS_H_
