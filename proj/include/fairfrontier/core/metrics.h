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

#ifndef FAIRFRONTIER_CORE_METRICS_H_
#define FAIRFRONTIER_CORE_METRICS_H_

#include <span>

#include "absl/status/statusor.h"
#include "fairfrontier/core/types.h"

namespace fairfrontier {

struct AccuracyResult {
  double value = 0.0;
  int64_t answered = 0;
  // Set when every prediction was a rejection; value is then 0.
  bool nothing_answered = false;
};

// Fraction of answered predictions that match the truth. Rejections are
// excluded from both numerator and denominator.
absl::StatusOr<AccuracyResult> Accuracy(std::span<const Prediction> predictions,
                                        std::span<const ClassId> truth);

struct CoverageResult {
  double value = 1.0;
  // Set for empty input, where coverage is defined as 1.
  bool vacuous = false;
};

CoverageResult Coverage(std::span<const Prediction> predictions);

}  // namespace fairfrontier

#endif  // FAIRFRONTIER_CORE_METRICS_H_
