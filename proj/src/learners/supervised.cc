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

#include "fairfrontier/learners/supervised.h"

#include <algorithm>
#include <limits>
#include <numeric>
#include <vector>

#include "fairfrontier/core/rng.h"
#include "fairfrontier/core/status_macros.h"

namespace fairfrontier {

absl::StatusOr<Model> TrainSupervised(
    std::span<const LabeledExample> data, const ModelConfig& config,
    const TrainOptions& options,
    std::span<const LabeledExample> public_set) {
  if (data.empty()) {
    return absl::FailedPreconditionError("cannot train on an empty set");
  }
  if (options.epochs <= 0 || options.batch_size <= 0 ||
      !(options.learning_rate > 0.0)) {
    return absl::InvalidArgumentError(
        "epochs, batch_size and learning_rate must be positive");
  }
  FF_ASSIGN_OR_RETURN(Model model, Model::Create(config));
  FF_RETURN_IF_ERROR(ValidateExamples(data, config.dim,
                                      std::numeric_limits<int>::max(),
                                      config.num_classes));
  const bool regularize = options.dpl_weight > 0.0;
  if (regularize && public_set.empty()) {
    return absl::InvalidArgumentError("DPL regularizer needs a public set");
  }

  SeededRng rng(options.seed);
  model.InitializeGaussian(rng, options.init_stddev);

  const size_t p = model.parameter_count();
  std::vector<size_t> order(data.size());
  std::iota(order.begin(), order.end(), size_t{0});
  std::vector<double> grad(p);
  for (int epoch = 0; epoch < options.epochs; ++epoch) {
    rng.Shuffle(order);
    for (size_t start = 0; start < order.size();
         start += options.batch_size) {
      const size_t end =
          std::min(order.size(), start + static_cast<size_t>(options.batch_size));
      std::fill(grad.begin(), grad.end(), 0.0);
      for (size_t b = start; b < end; ++b) {
        const LabeledExample& ex = data[order[b]];
        model.CrossEntropyGradient(ex.features, ex.label, grad);
      }
      const double inv = 1.0 / static_cast<double>(end - start);
      for (double& g : grad) g *= inv;
      if (regularize) {
        FF_ASSIGN_OR_RETURN(
            DplResult dpl,
            Dpl(model, public_set, options.num_groups, options.dpl));
        for (size_t j = 0; j < p; ++j) {
          grad[j] += options.dpl_weight * dpl.gradient[j];
        }
      }
      std::span<double> theta = model.mutable_params();
      for (size_t j = 0; j < p; ++j) {
        theta[j] -= options.learning_rate * (grad[j] + options.l2 * theta[j]);
      }
    }
  }
  return model;
}

}  // namespace fairfrontier
