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

#ifndef FAIRFRONTIER_FAIRNESS_STREAM_PROCESSORS_H_
#define FAIRFRONTIER_FAIRNESS_STREAM_PROCESSORS_H_

#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "fairfrontier/core/types.h"
#include "fairfrontier/fairness/gate.h"

namespace fairfrontier {

// Streaming demographic-parity filter over training data. Gates each example
// on its true label and keeps those that pass. Owns its counter; one instance
// per stream.
class PreProcessor {
 public:
  PreProcessor(int num_groups, int num_classes, GateParams params)
      : counts_(num_groups, num_classes), params_(params) {}

  // Returns true if the example is kept.
  bool Offer(const LabeledExample& example);

  const GroupClassCounter& counts() const { return counts_; }
  const GateTrace& trace() const { return trace_; }

 private:
  GroupClassCounter counts_;
  GateParams params_;
  GateTrace trace_;
};

// Inference-time filter: answers a model prediction for group z or rejects it
// when answering would break the running disparity bound.
class PostProcessor {
 public:
  PostProcessor(int num_groups, int num_classes, GateParams params)
      : counts_(num_groups, num_classes), params_(params) {}

  Prediction Process(GroupId z, ClassId predicted);

  const GroupClassCounter& counts() const { return counts_; }
  const GateTrace& trace() const { return trace_; }

 private:
  GroupClassCounter counts_;
  GateParams params_;
  GateTrace trace_;
};

struct PreprocessResult {
  std::vector<LabeledExample> kept;
  GateTrace trace;
};

absl::StatusOr<PreprocessResult> PreprocessStream(
    std::span<const LabeledExample> data, int num_groups, int num_classes,
    const GateParams& params);

struct PostprocessQuery {
  GroupId group = 0;
  ClassId predicted = 0;
};

struct PostprocessResult {
  std::vector<Prediction> outputs;
  GateTrace trace;
};

absl::StatusOr<PostprocessResult> PostprocessStream(
    std::span<const PostprocessQuery> queries, int num_groups, int num_classes,
    const GateParams& params);

}  // namespace fairfrontier

#endif  // FAIRFRONTIER_FAIRNESS_STREAM_PROCESSORS_H_
