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

#include "fairfrontier/core/metrics.h"

#include "absl/strings/str_format.h"

namespace fairfrontier {

absl::StatusOr<AccuracyResult> Accuracy(std::span<const Prediction> predictions,
                                        std::span<const ClassId> truth) {
  if (predictions.size() != truth.size()) {
    return absl::InvalidArgumentError(
        absl::StrFormat("accuracy: %d predictions vs %d labels",
                        predictions.size(), truth.size()));
  }
  AccuracyResult result;
  int64_t correct = 0;
  for (size_t i = 0; i < predictions.size(); ++i) {
    if (!predictions[i].has_value()) continue;
    ++result.answered;
    if (*predictions[i] == truth[i]) ++correct;
  }
  if (result.answered == 0) {
    result.nothing_answered = true;
    return result;
  }
  result.value =
      static_cast<double>(correct) / static_cast<double>(result.answered);
  return result;
}

CoverageResult Coverage(std::span<const Prediction> predictions) {
  if (predictions.empty()) return {.value = 1.0, .vacuous = true};
  int64_t answered = 0;
  for (const Prediction& p : predictions) answered += p.has_value() ? 1 : 0;
  return {.value = static_cast<double>(answered) /
                   static_cast<double>(predictions.size()),
          .vacuous = false};
}

}  // namespace fairfrontier
