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

#include "fairfrontier/aggregation/votes.h"

#include <vector>

#include "absl/strings/str_format.h"

namespace fairfrontier {

absl::StatusOr<VoteHistogram> CollectVotes(std::span<const Predictor> teachers,
                                           std::span<const double> x,
                                           int num_classes) {
  if (teachers.empty()) {
    return absl::InvalidArgumentError("need at least one teacher");
  }
  if (num_classes <= 0) {
    return absl::InvalidArgumentError("num_classes must be positive");
  }
  std::vector<int64_t> votes(num_classes, 0);
  for (size_t t = 0; t < teachers.size(); ++t) {
    const ClassId vote = teachers[t](x);
    if (vote < 0 || vote >= num_classes) {
      return absl::InvalidArgumentError(absl::StrFormat(
          "teacher %d voted %d, outside [0, %d)", t, vote, num_classes));
    }
    ++votes[vote];
  }
  return VoteHistogram::Create(std::move(votes));
}

}  // namespace fairfrontier
