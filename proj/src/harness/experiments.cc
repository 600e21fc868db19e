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

#include "fairfrontier/harness/experiments.h"

#include <algorithm>

#include "absl/strings/str_format.h"
#include "fairfrontier/core/metrics.h"
#include "fairfrontier/core/rng.h"
#include "fairfrontier/core/status_macros.h"
#include "fairfrontier/fairness/disparity.h"
#include "fairfrontier/fairness/stream_processors.h"
#include "fairfrontier/pareto/pareto.h"

namespace fairfrontier {
namespace {

// Seed stream tags.
constexpr uint64_t kQueryStream = 11;
constexpr uint64_t kStudentStream = 12;
constexpr uint64_t kTeacherStream = 13;
constexpr uint64_t kInitStream = 14;
constexpr uint64_t kDpSgdStream = 15;

void AddFlag(ExperimentRecord& record, std::string flag) {
  if (!record.HasFlag(flag)) record.flags.push_back(std::move(flag));
}

struct Evaluation {
  GateTrace trace;
  double accuracy = 0.0;
  double coverage = 0.0;
  double max_disparity = 0.0;
  bool accuracy_undefined = false;
  bool disparity_undefined = false;
};

absl::StatusOr<Evaluation> EvaluateOnTest(const Model& model,
                                          const DatasetSplits& splits,
                                          bool use_postprocessor,
                                          const GateParams& gate) {
  const auto& test = splits.test;
  PostProcessor post(splits.num_groups, splits.num_classes, gate);
  std::vector<Prediction> outputs;
  std::vector<ClassId> truth;
  outputs.reserve(test.size());
  for (const LabeledExample& ex : test) {
    const ClassId y_hat = model.Predict(ex.features);
    outputs.push_back(use_postprocessor ? post.Process(ex.group, y_hat)
                                        : Prediction(y_hat));
    truth.push_back(ex.label);
  }
  Evaluation eval;
  eval.trace = post.trace();
  FF_ASSIGN_OR_RETURN(const AccuracyResult acc, Accuracy(outputs, truth));
  eval.accuracy = acc.value;
  eval.accuracy_undefined = acc.nothing_answered;
  eval.coverage = Coverage(outputs).value;

  std::vector<ClassId> answered;
  std::vector<GroupId> groups;
  for (size_t i = 0; i < test.size(); ++i) {
    if (!outputs[i].has_value()) continue;
    answered.push_back(*outputs[i]);
    groups.push_back(test[i].group);
  }
  FF_ASSIGN_OR_RETURN(
      const DisparityMatrix matrix,
      ComputeDisparityMatrix(answered, groups, splits.num_groups,
                             splits.num_classes));
  const absl::StatusOr<double> gamma = MaxDisparity(matrix);
  if (gamma.ok()) {
    eval.max_disparity = std::max(0.0, *gamma);
  } else {
    eval.disparity_undefined = true;
  }
  return eval;
}

void ApplyEvaluation(const Evaluation& eval, ExperimentRecord& record) {
  record.accuracy = eval.accuracy;
  record.max_disparity = eval.max_disparity;
  if (eval.accuracy_undefined) AddFlag(record, "accuracy_undefined");
  if (eval.disparity_undefined) AddFlag(record, "disparity_undefined");
}

ModelConfig WithShape(ModelConfig config, const DatasetSplits& splits) {
  config.dim = splits.dim;
  config.num_classes = splits.num_classes;
  return config;
}

}  // namespace

std::string_view PlacementName(Placement placement) {
  switch (placement) {
    case Placement::kFairAggregator:
      return "fair_aggregator";
    case Placement::kPreProcessing:
      return "pre_processing";
    case Placement::kInProcessing:
      return "in_processing";
  }
  return "unknown";
}

absl::StatusOr<PateSetup> PreparePate(DatasetSplits splits,
                                      const TeacherConfig& teachers,
                                      uint64_t seed) {
  if (splits.public_unlabeled.empty() || splits.test.empty()) {
    return absl::InvalidArgumentError("public and test splits must be nonempty");
  }
  FF_ASSIGN_OR_RETURN(
      const TeacherEnsemble ensemble,
      TrainTeachers(splits.teacher_train, teachers.num_teachers,
                    WithShape(teachers.model, splits), teachers.train,
                    DeriveSeed(seed, {kTeacherStream})));
  PateSetup setup;
  setup.num_teachers = teachers.num_teachers;
  setup.public_votes.reserve(splits.public_unlabeled.size());
  for (const LabeledExample& ex : splits.public_unlabeled) {
    FF_ASSIGN_OR_RETURN(VoteHistogram hist, ensemble.Votes(ex.features));
    setup.public_votes.push_back(std::move(hist));
  }
  setup.splits = std::move(splits);
  return setup;
}

absl::StatusOr<PateRun> RunPate(const PateSetup& setup, const PateConfig& config,
                                Placement placement, double eps_target,
                                double gamma, uint64_t seed) {
  const DatasetSplits& splits = setup.splits;
  AggregatorParams agg = config.aggregator;
  agg.gate.rho_fair = gamma;
  FF_RETURN_IF_ERROR(agg.Validate());
  if (setup.public_votes.size() != splits.public_unlabeled.size()) {
    return absl::InvalidArgumentError("setup votes do not match public split");
  }

  PateRun run;
  run.aggregation_gate = agg.gate;
  ExperimentRecord& record = run.record;
  switch (placement) {
    case Placement::kFairAggregator:
      record.framework = Framework::kFairPate;
      break;
    case Placement::kPreProcessing:
      record.framework = Framework::kPatePre;
      break;
    case Placement::kInProcessing:
      record.framework = Framework::kPateIn;
      break;
  }
  record.eps_spec = eps_target;
  record.fairness_spec = gamma;
  record.seed = seed;
  if (agg.threshold > setup.num_teachers) {
    AddFlag(record, "threshold_exceeds_teachers");
  }

  FF_ASSIGN_OR_RETURN(
      BudgetTracker tracker,
      BudgetTracker::Create(
          {.target = {.epsilon = eps_target, .delta = config.delta},
           .charge_fairness_rejected = config.charge_fairness_rejected,
           .data_dependent = config.data_dependent}));

  SeededRng noise(DeriveSeed(seed, {kQueryStream}));
  GroupClassCounter gate_counts(splits.num_groups, splits.num_classes);
  GroupClassCounter answered(splits.num_groups, splits.num_classes);
  int64_t consensus_rejected = 0;
  int64_t fairness_rejected = 0;
  size_t stream_length = splits.public_unlabeled.size();
  if (config.max_queries > 0) {
    stream_length =
        std::min(stream_length, static_cast<size_t>(config.max_queries));
  }
  for (size_t i = 0; i < stream_length; ++i) {
    const LabeledExample& query = splits.public_unlabeled[i];
    const VoteHistogram& hist = setup.public_votes[i];
    if (!tracker.CanAfford(hist, agg)) {
      AddFlag(record, "budget_exhausted");
      break;
    }
    const AggregationOutcome outcome =
        placement == Placement::kFairAggregator
            ? ConfidentFairGnmax(hist, query.group, gate_counts, agg, noise)
            : ConfidentGnmax(hist, agg, noise);
    if (outcome.gate.has_value()) {
      run.aggregation_trace.push_back({.group = query.group,
                                       .label = *outcome.noisy_argmax,
                                       .decision = outcome.gate->decision,
                                       .condition = outcome.gate->condition});
    }
    tracker.ChargeQuery(outcome, hist, agg, query.group);
    if (outcome.rejected_by == RejectedBy::kConsensus) ++consensus_rejected;
    if (outcome.rejected_by == RejectedBy::kFairness) ++fairness_rejected;
    if (!outcome.answered()) continue;
    answered.Increment(query.group, *outcome.result);
    run.student_train.push_back({.features = query.features,
                                 .group = query.group,
                                 .label = *outcome.result,
                                 .is_public = true});
  }

  const double stream = static_cast<double>(stream_length);
  record.eps_achieved = tracker.CurrentEpsilon();
  record.coverage = static_cast<double>(answered.Total()) / stream;
  record.extra["queries_answered"] = static_cast<double>(answered.Total());
  record.extra["queries_charged"] = static_cast<double>(tracker.queries_charged());
  record.extra["consensus_rejected"] = static_cast<double>(consensus_rejected);
  record.extra["fairness_rejected"] = static_cast<double>(fairness_rejected);
  run.answered_counts = answered;
  run.tracker = std::move(tracker);

  if (placement == Placement::kPreProcessing) {
    FF_ASSIGN_OR_RETURN(
        PreprocessResult pre,
        PreprocessStream(run.student_train, splits.num_groups,
                         splits.num_classes, agg.gate));
    run.student_train = std::move(pre.kept);
  }
  record.extra["student_train_size"] =
      static_cast<double>(run.student_train.size());

  if (run.student_train.empty()) {
    AddFlag(record, "no_answered_queries");
    AddFlag(record, "accuracy_undefined");
    AddFlag(record, "disparity_undefined");
    record.extra["inference_coverage"] = 0.0;
    record = RoundRecord(std::move(record));
    return run;
  }

  TrainOptions student_options = config.student_train;
  student_options.seed = DeriveSeed(seed, {kStudentStream});
  if (placement == Placement::kInProcessing) {
    student_options.dpl_weight = config.student_dpl_weight;
    student_options.dpl = config.student_dpl;
    student_options.num_groups = splits.num_groups;
  }
  FF_ASSIGN_OR_RETURN(
      Model student,
      TrainSupervised(run.student_train, WithShape(config.student, splits),
                      student_options, splits.public_unlabeled));

  FF_ASSIGN_OR_RETURN(
      Evaluation eval,
      EvaluateOnTest(student, splits, config.use_postprocessor, agg.gate));
  ApplyEvaluation(eval, record);
  record.extra["inference_coverage"] = eval.coverage;
  run.inference_trace = std::move(eval.trace);
  run.student = std::move(student);
  record = RoundRecord(std::move(record));
  return run;
}

absl::StatusOr<PateRun> RunFairPate(const PateSetup& setup,
                                    const PateConfig& config, double eps_target,
                                    double gamma, uint64_t seed) {
  return RunPate(setup, config, Placement::kFairAggregator, eps_target, gamma,
                 seed);
}

absl::StatusOr<DpSgdRun> RunFairDpSgd(const DatasetSplits& splits,
                                      const DpSgdConfig& config,
                                      double eps_target, double reg_weight,
                                      uint64_t seed) {
  if (splits.test.empty()) return absl::InvalidArgumentError("empty test split");
  DpSgdParams dp = config.dp;
  const size_t n = splits.teacher_train.size();
  FF_RETURN_IF_ERROR(dp.Validate(n));
  FF_ASSIGN_OR_RETURN(
      dp.noise_multiplier,
      CalibrateNoiseMultiplier(dp.SamplingRate(n), dp.steps, dp.delta,
                               eps_target, DefaultOrders()));

  FF_ASSIGN_OR_RETURN(Model model,
                      Model::Create(WithShape(config.model, splits)));
  SeededRng init_rng(DeriveSeed(seed, {kInitStream}));
  model.InitializeGaussian(init_rng, config.init_stddev);
  SeededRng train_rng(DeriveSeed(seed, {kDpSgdStream}));
  const FairRegParams fair{.reg_weight = reg_weight,
                           .dpl = config.dpl,
                           .num_groups = splits.num_groups};
  FF_ASSIGN_OR_RETURN(DpSgdResult trained,
                      FairDpSgdTrain(splits.teacher_train,
                                     splits.public_unlabeled, std::move(model),
                                     dp, fair, train_rng));

  DpSgdRun run;
  run.noise_multiplier = dp.noise_multiplier;
  ExperimentRecord& record = run.record;
  record.framework = Framework::kFairDpSgd;
  record.eps_spec = eps_target;
  record.fairness_spec = reg_weight;
  record.eps_achieved = trained.epsilon;
  record.seed = seed;
  FF_ASSIGN_OR_RETURN(Evaluation eval,
                      EvaluateOnTest(trained.model, splits,
                                     config.use_postprocessor,
                                     config.postprocessor));
  ApplyEvaluation(eval, record);
  record.coverage = eval.coverage;
  record.extra["noise_multiplier"] = dp.noise_multiplier;
  record.extra["empty_batches"] = static_cast<double>(trained.empty_batches);
  run.inference_trace = std::move(eval.trace);
  run.model = std::move(trained.model);
  record = RoundRecord(std::move(record));
  return run;
}

}  // namespace fairfrontier
