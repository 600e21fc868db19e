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

#ifndef FAIRFRONTIER_LEARNERS_MODEL_H_
#define FAIRFRONTIER_LEARNERS_MODEL_H_

#include <span>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "fairfrontier/core/rng.h"
#include "fairfrontier/core/types.h"

namespace fairfrontier {

enum class Architecture { kSoftmaxRegression, kMlp };

std::string_view ArchitectureName(Architecture arch);
absl::StatusOr<Architecture> ParseArchitecture(std::string_view name);

struct ModelConfig {
  Architecture architecture = Architecture::kSoftmaxRegression;
  int dim = 0;
  int num_classes = 2;
  // Hidden width of the one-hidden-layer tanh MLP; ignored otherwise.
  int hidden_width = 16;
};

// Flat-parameter classifier producing K logits.
//
// Parameter layout (row-major):
//   softmax regression: W [K x d], b [K]
//   MLP:                W1 [H x d], b1 [H], W2 [K x H], b2 [K]
class Model {
 public:
  // Zero-initialized parameters.
  static absl::StatusOr<Model> Create(const ModelConfig& config);

  const ModelConfig& config() const { return config_; }
  int dim() const { return config_.dim; }
  int num_classes() const { return config_.num_classes; }
  size_t parameter_count() const { return params_.size(); }
  std::span<const double> params() const { return params_; }
  std::span<double> mutable_params() { return params_; }

  // Every parameter ~ N(0, stddev^2).
  void InitializeGaussian(SeededRng& rng, double stddev = 0.1);

  absl::StatusOr<std::vector<double>> Forward(std::span<const double> x) const;
  // Forward without the dimension check.
  std::vector<double> Logits(std::span<const double> x) const;
  // Argmax of the logits, lowest id on ties.
  ClassId Predict(std::span<const double> x) const;

  // Adds scale * (d logits / d theta)^T upstream into grad.
  void AccumulateLogitVjp(std::span<const double> x,
                          std::span<const double> upstream, double scale,
                          std::span<double> grad) const;

  // Cross-entropy of (x, label); adds its gradient into grad and returns the
  // loss.
  double CrossEntropyGradient(std::span<const double> x, ClassId label,
                              std::span<double> grad) const;
  double CrossEntropy(std::span<const double> x, ClassId label) const;

  friend bool operator==(const Model& a, const Model& b) {
    return a.params_ == b.params_ && a.config_.architecture ==
               b.config_.architecture &&
           a.config_.dim == b.config_.dim &&
           a.config_.num_classes == b.config_.num_classes &&
           a.config_.hidden_width == b.config_.hidden_width;
  }

 private:
  explicit Model(const ModelConfig& config, size_t count)
      : config_(config), params_(count, 0.0) {}

  ModelConfig config_;
  std::vector<double> params_;
};

// Numerically stable softmax of logits / temperature.
std::vector<double> Softmax(std::span<const double> logits,
                            double temperature = 1.0);

double L2Norm(std::span<const double> v);

// g / max(1, |g| / clip_norm). clip_norm may be +inf.
void ClipInPlace(std::span<double> g, double clip_norm);

}  // namespace fairfrontier

#endif  // FAIRFRONTIER_LEARNERS_MODEL_H_
