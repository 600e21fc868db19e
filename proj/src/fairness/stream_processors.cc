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

#include "fairfrontier/fairness/stream_processors.h"

#include "absl/strings/str_format.h"
#include "fairfrontier/core/status_macros.h"

namespace fairfrontier {
namespace {

bool GateAndRecord(GroupClassCounter& counts, const GateParams& params,
                   GroupId z, ClassId k, GateTrace& trace) {
  const GateEvaluation eval = EvaluateGate(counts, z, k, params);
  trace.push_back({.group = z,
                   .label = k,
                   .decision = eval.decision,
                   .condition = eval.condition});
  if (!eval.answers()) return false;
  counts.Increment(z, k);
  return true;
}

absl::Status CheckIds(size_t index, GroupId z, ClassId k, int num_groups,
                      int num_classes) {
  if (z < 0 || z >= num_groups || k < 0 || k >= num_classes) {
    return absl::InvalidArgumentError(
        absl::StrFormat("stream entry %d: (group %d, class %d) out of range",
                        index, z, k));
  }
  return absl::OkStatus();
}

}  // namespace

bool PreProcessor::Offer(const LabeledExample& example) {
  return GateAndRecord(counts_, params_, example.group, example.label, trace_);
}

Prediction PostProcessor::Process(GroupId z, ClassId predicted) {
  if (!GateAndRecord(counts_, params_, z, predicted, trace_)) {
    return std::nullopt;
  }
  return predicted;
}

absl::StatusOr<PreprocessResult> PreprocessStream(
    std::span<const LabeledExample> data, int num_groups, int num_classes,
    const GateParams& params) {
  FF_RETURN_IF_ERROR(params.Validate());
  PreProcessor processor(num_groups, num_classes, params);
  PreprocessResult result;
  for (size_t i = 0; i < data.size(); ++i) {
    FF_RETURN_IF_ERROR(
        CheckIds(i, data[i].group, data[i].label, num_groups, num_classes));
    if (processor.Offer(data[i])) result.kept.push_back(data[i]);
  }
  result.trace = processor.trace();
  return result;
}

absl::StatusOr<PostprocessResult> PostprocessStream(
    std::span<const PostprocessQuery> queries, int num_groups, int num_classes,
    const GateParams& params) {
  FF_RETURN_IF_ERROR(params.Validate());
  PostProcessor processor(num_groups, num_classes, params);
  PostprocessResult result;
  result.outputs.reserve(queries.size());
  for (size_t i = 0; i < queries.size(); ++i) {
    FF_RETURN_IF_ERROR(CheckIds(i, queries[i].group, queries[i].predicted,
                                num_groups, num_classes));
    result.outputs.push_back(
        processor.Process(queries[i].group, queries[i].predicted));
  }
  result.trace = processor.trace();
  return result;
}

}  // namespace fairfrontier
