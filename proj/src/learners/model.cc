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

#include "fairfrontier/learners/model.h"

#include <algorithm>
#include <cmath>

#include "absl/strings/str_format.h"

namespace fairfrontier {

std::string_view ArchitectureName(Architecture arch) {
  switch (arch) {
    case Architecture::kSoftmaxRegression:
      return "softmax_regression";
    case Architecture::kMlp:
      return "mlp";
  }
  return "unknown";
}

absl::StatusOr<Architecture> ParseArchitecture(std::string_view name) {
  if (name == "softmax_regression") return Architecture::kSoftmaxRegression;
  if (name == "mlp") return Architecture::kMlp;
  return absl::InvalidArgumentError(
      absl::StrFormat("unknown architecture '%s'", std::string(name)));
}

absl::StatusOr<Model> Model::Create(const ModelConfig& config) {
  if (config.dim <= 0 || config.num_classes <= 0) {
    return absl::InvalidArgumentError("model dim and num_classes must be > 0");
  }
  const size_t d = config.dim;
  const size_t k = config.num_classes;
  if (config.architecture == Architecture::kSoftmaxRegression) {
    return Model(config, k * d + k);
  }
  if (config.hidden_width <= 0) {
    return absl::InvalidArgumentError("MLP hidden width must be > 0");
  }
  const size_t h = config.hidden_width;
  return Model(config, h * d + h + k * h + k);
}

void Model::InitializeGaussian(SeededRng& rng, double stddev) {
  for (double& p : params_) p = rng.Gaussian(stddev);
}

absl::StatusOr<std::vector<double>> Model::Forward(
    std::span<const double> x) const {
  if (static_cast<int>(x.size()) != config_.dim) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "input has dimension %d, model expects %d", x.size(), config_.dim));
  }
  return Logits(x);
}

namespace {

// out[r] = b[r] + sum_c W[r, c] in[c]
void Affine(const double* w, const double* b, std::span<const double> in,
            size_t rows, std::vector<double>& out) {
  const size_t cols = in.size();
  out.assign(rows, 0.0);
  for (size_t r = 0; r < rows; ++r) {
    double acc = b[r];
    const double* row = w + r * cols;
    for (size_t c = 0; c < cols; ++c) acc += row[c] * in[c];
    out[r] = acc;
  }
}

}  // namespace

std::vector<double> Model::Logits(std::span<const double> x) const {
  const size_t d = config_.dim;
  const size_t k = config_.num_classes;
  std::vector<double> logits;
  if (config_.architecture == Architecture::kSoftmaxRegression) {
    Affine(params_.data(), params_.data() + k * d, x, k, logits);
    return logits;
  }
  const size_t h = config_.hidden_width;
  const double* w1 = params_.data();
  const double* b1 = w1 + h * d;
  const double* w2 = b1 + h;
  const double* b2 = w2 + k * h;
  std::vector<double> hidden;
  Affine(w1, b1, x, h, hidden);
  for (double& v : hidden) v = std::tanh(v);
  Affine(w2, b2, hidden, k, logits);
  return logits;
}

ClassId Model::Predict(std::span<const double> x) const {
  const std::vector<double> logits = Logits(x);
  return static_cast<ClassId>(std::max_element(logits.begin(), logits.end()) -
                              logits.begin());
}

void Model::AccumulateLogitVjp(std::span<const double> x,
                               std::span<const double> upstream, double scale,
                               std::span<double> grad) const {
  const size_t d = config_.dim;
  const size_t k = config_.num_classes;
  if (config_.architecture == Architecture::kSoftmaxRegression) {
    double* gw = grad.data();
    double* gb = gw + k * d;
    for (size_t r = 0; r < k; ++r) {
      const double u = scale * upstream[r];
      if (u == 0.0) continue;
      for (size_t c = 0; c < d; ++c) gw[r * d + c] += u * x[c];
      gb[r] += u;
    }
    return;
  }
  const size_t h = config_.hidden_width;
  const double* w1 = params_.data();
  const double* b1 = w1 + h * d;
  const double* w2 = b1 + h;
  std::vector<double> hidden;
  Affine(w1, b1, x, h, hidden);
  for (double& v : hidden) v = std::tanh(v);

  double* gw1 = grad.data();
  double* gb1 = gw1 + h * d;
  double* gw2 = gb1 + h;
  double* gb2 = gw2 + k * h;
  std::vector<double> dhidden(h, 0.0);
  for (size_t r = 0; r < k; ++r) {
    const double u = scale * upstream[r];
    if (u == 0.0) continue;
    for (size_t j = 0; j < h; ++j) {
      gw2[r * h + j] += u * hidden[j];
      dhidden[j] += u * w2[r * h + j];
    }
    gb2[r] += u;
  }
  for (size_t j = 0; j < h; ++j) {
    const double dpre = dhidden[j] * (1.0 - hidden[j] * hidden[j]);
    if (dpre == 0.0) continue;
    for (size_t c = 0; c < d; ++c) gw1[j * d + c] += dpre * x[c];
    gb1[j] += dpre;
  }
}

double Model::CrossEntropyGradient(std::span<const double> x, ClassId label,
                                   std::span<double> grad) const {
  std::vector<double> probs = Softmax(Logits(x));
  const double loss = -std::log(std::max(probs[label], 1e-300));
  probs[label] -= 1.0;
  AccumulateLogitVjp(x, probs, 1.0, grad);
  return loss;
}

double Model::CrossEntropy(std::span<const double> x, ClassId label) const {
  const std::vector<double> logits = Logits(x);
  const double hi = *std::max_element(logits.begin(), logits.end());
  double sum = 0.0;
  for (double v : logits) sum += std::exp(v - hi);
  return hi + std::log(sum) - logits[label];
}

std::vector<double> Softmax(std::span<const double> logits,
                            double temperature) {
  std::vector<double> out(logits.size());
  if (logits.empty()) return out;
  const double hi = *std::max_element(logits.begin(), logits.end());
  double sum = 0.0;
  for (size_t i = 0; i < logits.size(); ++i) {
    out[i] = std::exp((logits[i] - hi) / temperature);
    sum += out[i];
  }
  for (double& v : out) v /= sum;
  return out;
}

double L2Norm(std::span<const double> v) {
  double sum = 0.0;
  for (double x : v) sum += x * x;
  return std::sqrt(sum);
}

void ClipInPlace(std::span<double> g, double clip_norm) {
  if (std::isinf(clip_norm)) return;
  const double factor = std::max(1.0, L2Norm(g) / clip_norm);
  if (factor == 1.0) return;
  for (double& x : g) x /= factor;
}

}  // namespace fairfrontier
