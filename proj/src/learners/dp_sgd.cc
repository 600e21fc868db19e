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

#include "fairfrontier/learners/dp_sgd.h"

#include <cmath>
#include <limits>

#include "absl/strings/str_format.h"
#include "fairfrontier/core/status_macros.h"

namespace fairfrontier {

absl::Status DpSgdParams::Validate(size_t dataset_size) const {
  if (dataset_size == 0) return absl::InvalidArgumentError("empty training set");
  if (!(learning_rate > 0.0)) {
    return absl::InvalidArgumentError("learning_rate must be > 0");
  }
  if (!(noise_multiplier >= 0.0) || !std::isfinite(noise_multiplier)) {
    return absl::InvalidArgumentError("noise_multiplier must be finite and >= 0");
  }
  if (expected_batch <= 0 ||
      static_cast<size_t>(expected_batch) > dataset_size) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "expected_batch must lie in [1, %d]", dataset_size));
  }
  if (!(clip_norm > 0.0)) {
    return absl::InvalidArgumentError("clip_norm must be > 0");
  }
  if (std::isinf(clip_norm) && noise_multiplier > 0.0) {
    return absl::InvalidArgumentError(
        "clip_norm = inf is only allowed without noise");
  }
  if (steps <= 0) return absl::InvalidArgumentError("steps must be > 0");
  if (!(delta > 0.0 && delta < 1.0)) {
    return absl::InvalidArgumentError("delta must lie in (0, 1)");
  }
  return absl::OkStatus();
}

double DpSgdParams::SamplingRate(size_t dataset_size) const {
  return static_cast<double>(expected_batch) /
         static_cast<double>(dataset_size);
}

absl::StatusOr<double> DpSgdEpsilon(double q, double noise_multiplier,
                                    int64_t steps, double delta,
                                    std::span<const double> orders) {
  if (noise_multiplier == 0.0) return std::numeric_limits<double>::infinity();
  FF_ASSIGN_OR_RETURN(RdpCurve step,
                      SubsampledGaussianRdpCurve(q, noise_multiplier, orders));
  return RdpToDp(step.Scaled(static_cast<double>(steps)), delta);
}

absl::StatusOr<double> CalibrateNoiseMultiplier(double q, int64_t steps,
                                                double delta,
                                                double target_epsilon,
                                                std::span<const double> orders) {
  if (!(target_epsilon > 0.0)) {
    return absl::InvalidArgumentError("target epsilon must be > 0");
  }
  double hi = 1.0;
  for (int i = 0;; ++i) {
    FF_ASSIGN_OR_RETURN(const double eps,
                        DpSgdEpsilon(q, hi, steps, delta, orders));
    if (eps <= target_epsilon) break;
    if (i > 60) {
      return absl::OutOfRangeError("no noise multiplier reaches the target");
    }
    hi *= 2.0;
  }
  double lo = 0.0;
  while (hi - lo > 1e-4 * hi) {
    const double mid = 0.5 * (lo + hi);
    FF_ASSIGN_OR_RETURN(const double eps,
                        DpSgdEpsilon(q, mid, steps, delta, orders));
    (eps <= target_epsilon ? hi : lo) = mid;
  }
  return hi;
}

namespace {

absl::StatusOr<DpSgdResult> Train(std::span<const LabeledExample> data,
                                  std::span<const LabeledExample> public_set,
                                  Model model, const DpSgdParams& params,
                                  const FairRegParams* fair, SeededRng& rng) {
  FF_RETURN_IF_ERROR(params.Validate(data.size()));
  FF_RETURN_IF_ERROR(
      ValidateExamples(data, model.dim(),
                       fair != nullptr ? fair->num_groups
                                       : std::numeric_limits<int>::max(),
                       model.num_classes()));
  const bool regularize = fair != nullptr && fair->reg_weight != 0.0;
  if (regularize && public_set.empty()) {
    return absl::InvalidArgumentError(
        "the fairness regularizer needs a nonempty public set");
  }

  const size_t n = data.size();
  const size_t p = model.parameter_count();
  const double q = params.SamplingRate(n);
  const double noise_std = params.noise_multiplier * params.clip_norm;

  DpSgdResult result{.model = model};
  std::vector<size_t> batch;
  std::vector<double> sum(p);
  std::vector<double> g(p);
  for (int64_t t = 0; t < params.steps; ++t) {
    batch.clear();
    for (size_t i = 0; i < n; ++i) {
      if (rng.Uniform() < q) batch.push_back(i);
    }
    if (batch.empty()) {
      ++result.empty_batches;
      continue;
    }

    std::vector<double> fair_grad;
    if (regularize) {
      FF_ASSIGN_OR_RETURN(
          DplResult dpl,
          Dpl(result.model, public_set, fair->num_groups, fair->dpl));
      fair_grad = std::move(dpl.gradient);
    }

    std::fill(sum.begin(), sum.end(), 0.0);
    for (size_t i : batch) {
      std::fill(g.begin(), g.end(), 0.0);
      result.model.CrossEntropyGradient(data[i].features, data[i].label, g);
      if (regularize) {
        for (size_t j = 0; j < p; ++j) g[j] += fair->reg_weight * fair_grad[j];
      }
      ClipInPlace(g, params.clip_norm);
      for (size_t j = 0; j < p; ++j) sum[j] += g[j];
    }
    if (noise_std > 0.0) {
      for (size_t j = 0; j < p; ++j) sum[j] += rng.Gaussian(noise_std);
    }
    const double step = params.learning_rate / static_cast<double>(batch.size());
    std::span<double> theta = result.model.mutable_params();
    for (size_t j = 0; j < p; ++j) theta[j] -= step * sum[j];
  }

  FF_ASSIGN_OR_RETURN(result.epsilon,
                      DpSgdEpsilon(q, params.noise_multiplier, params.steps,
                                   params.delta, DefaultOrders()));
  return result;
}

}  // namespace

absl::StatusOr<DpSgdResult> DpSgdTrain(std::span<const LabeledExample> data,
                                       Model model, const DpSgdParams& params,
                                       SeededRng& rng) {
  return Train(data, {}, std::move(model), params, nullptr, rng);
}

absl::StatusOr<DpSgdResult> FairDpSgdTrain(
    std::span<const LabeledExample> data,
    std::span<const LabeledExample> public_set, Model model,
    const DpSgdParams& params, const FairRegParams& fair, SeededRng& rng) {
  if (!(fair.reg_weight >= 0.0)) {
    return absl::InvalidArgumentError("reg_weight must be >= 0");
  }
  return Train(data, public_set, std::move(model), params, &fair, rng);
}

}  // namespace fairfrontier
