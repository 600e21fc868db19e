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

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <vector>

#include "fairfrontier/accounting/rdp.h"
#include "fairfrontier/core/rng.h"
#include "fairfrontier/fairness/disparity.h"
#include "fairfrontier/learners/checkpoint.h"
#include "fairfrontier/learners/dp_sgd.h"
#include "fairfrontier/learners/dpl.h"
#include "fairfrontier/learners/model.h"
#include "fairfrontier/learners/supervised.h"
#include "gtest/gtest.h"

namespace fairfrontier {
namespace {

// Epsilon of 1000 steps at q = 0.01, sigma = 1, delta = 1e-5 over orders
// 2..64, 128, 256 (50-digit evaluation of the binomial expansion).
constexpr double kDpSgdReferenceEpsilon = 2.5383475454589216686;

Model MakeModel(Architecture arch, int dim, int classes, uint64_t seed,
                double stddev = 0.5, int hidden = 5) {
  Model m = *Model::Create({.architecture = arch,
                            .dim = dim,
                            .num_classes = classes,
                            .hidden_width = hidden});
  SeededRng rng(seed);
  m.InitializeGaussian(rng, stddev);
  return m;
}

std::vector<double> RandomVector(SeededRng& rng, int n, double scale = 1.0) {
  std::vector<double> v(n);
  for (double& x : v) x = rng.Gaussian(scale);
  return v;
}

// Two Gaussian blobs per group with group-dependent label rates.
std::vector<LabeledExample> Blobs(int n, int dim, uint64_t seed) {
  SeededRng rng(seed);
  std::vector<LabeledExample> out;
  for (int i = 0; i < n; ++i) {
    LabeledExample e;
    e.group = rng.Bernoulli(0.5) ? 1 : 0;
    e.label = rng.Bernoulli(e.group == 0 ? 0.7 : 0.3) ? 1 : 0;
    e.features = RandomVector(rng, dim, 0.7);
    e.features[0] += e.label == 1 ? 1.5 : -1.5;
    e.features[1] += e.group == 1 ? 1.0 : -1.0;
    out.push_back(std::move(e));
  }
  return out;
}

double RelativeError(std::span<const double> a, std::span<const double> b) {
  double diff = 0.0;
  for (size_t i = 0; i < a.size(); ++i) diff += (a[i] - b[i]) * (a[i] - b[i]);
  const double scale = std::max({L2Norm(a), L2Norm(b), 1e-8});
  return std::sqrt(diff) / scale;
}

TEST(ModelTest, ZeroWeightsGiveUniformLogits) {
  Model m = *Model::Create({.dim = 3, .num_classes = 4});
  std::vector<double> x = {1.0, -2.0, 0.5};
  const std::vector<double> logits = m.Logits(x);
  for (double v : logits) EXPECT_EQ(v, 0.0);
  EXPECT_EQ(m.Predict(x), 0);
  for (double p : Softmax(logits)) EXPECT_DOUBLE_EQ(p, 0.25);
}

TEST(ModelTest, HandSetWeightsSeparateClusters) {
  Model m = *Model::Create({.dim = 2, .num_classes = 2});
  std::span<double> w = m.mutable_params();
  // W = [[-1, 0], [1, 0]], b = 0.
  w[0] = -1.0;
  w[2] = 1.0;
  std::vector<double> left = {-3.0, 0.2}, right = {3.0, -0.4};
  EXPECT_EQ(m.Predict(left), 0);
  EXPECT_EQ(m.Predict(right), 1);
}

TEST(ModelTest, NearLinearMlpMatchesSoftmaxRegression) {
  constexpr int kDim = 4, kClasses = 3;
  constexpr double kScale = 1e-4;
  Model linear = MakeModel(Architecture::kSoftmaxRegression, kDim, kClasses, 3);
  Model mlp = *Model::Create({.architecture = Architecture::kMlp,
                              .dim = kDim,
                              .num_classes = kClasses,
                              .hidden_width = kDim});
  std::span<const double> lw = linear.params();
  std::span<double> p = mlp.mutable_params();
  // W1 = kScale * I, b1 = 0, W2 = W / kScale, b2 = b.
  const size_t w2 = kDim * kDim + kDim;
  for (int i = 0; i < kDim; ++i) p[i * kDim + i] = kScale;
  for (int r = 0; r < kClasses; ++r) {
    for (int j = 0; j < kDim; ++j) p[w2 + r * kDim + j] = lw[r * kDim + j] / kScale;
    p[w2 + kClasses * kDim + r] = lw[kClasses * kDim + r];
  }
  SeededRng rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    const std::vector<double> x = RandomVector(rng, kDim);
    const std::vector<double> a = linear.Logits(x);
    const std::vector<double> b = mlp.Logits(x);
    for (int k = 0; k < kClasses; ++k) EXPECT_NEAR(a[k], b[k], 1e-6);
  }
}

TEST(ModelTest, ForwardChecksDimension) {
  Model m = *Model::Create({.dim = 3, .num_classes = 2});
  std::vector<double> x = {1.0};
  EXPECT_FALSE(m.Forward(x).ok());
  EXPECT_FALSE(Model::Create({.dim = 0}).ok());
  EXPECT_FALSE(Model::Create({.dim = 2, .num_classes = 0}).ok());
}

TEST(ClipTest, Cases) {
  std::vector<double> small = {0.3, 0.4};  // norm 0.5
  ClipInPlace(small, 1.0);
  EXPECT_EQ(small, (std::vector<double>{0.3, 0.4}));
  std::vector<double> big = {6.0, 8.0};  // norm 10
  ClipInPlace(big, 1.0);
  EXPECT_NEAR(L2Norm(big), 1.0, 1e-15);
  EXPECT_NEAR(big[0], 0.6, 1e-15);
  std::vector<double> any = {1e6, -1e6};
  ClipInPlace(any, INFINITY);
  EXPECT_EQ(any[0], 1e6);
}

TEST(SoftmaxTest, TemperatureLimits) {
  std::vector<double> logits = {1.0, 2.0, 0.5};
  const std::vector<double> cold = Softmax(logits, 1e-3);
  EXPECT_NEAR(cold[1], 1.0, 1e-12);
  const std::vector<double> hot = Softmax(logits, 1e6);
  for (double p : hot) EXPECT_NEAR(p, 1.0 / 3.0, 1e-5);
  double sum = 0.0;
  for (double p : Softmax(logits, 0.7)) sum += p;
  EXPECT_NEAR(sum, 1.0, 1e-15);
}

TEST(CrossEntropyTest, GradientMatchesFiniteDifferences) {
  SeededRng rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    const Architecture arch =
        trial % 2 == 0 ? Architecture::kSoftmaxRegression : Architecture::kMlp;
    const int dim = 2 + static_cast<int>(rng.UniformIndex(5));
    const int classes = 2 + static_cast<int>(rng.UniformIndex(3));
    Model m = MakeModel(arch, dim, classes, 100 + trial);
    const std::vector<double> x = RandomVector(rng, dim);
    const ClassId label = static_cast<ClassId>(rng.UniformIndex(classes));
    std::vector<double> analytic(m.parameter_count(), 0.0);
    m.CrossEntropyGradient(x, label, analytic);
    std::vector<double> numeric(m.parameter_count());
    constexpr double kH = 1e-6;
    for (size_t j = 0; j < numeric.size(); ++j) {
      const double saved = m.params()[j];
      m.mutable_params()[j] = saved + kH;
      const double up = m.CrossEntropy(x, label);
      m.mutable_params()[j] = saved - kH;
      const double down = m.CrossEntropy(x, label);
      m.mutable_params()[j] = saved;
      numeric[j] = (up - down) / (2.0 * kH);
    }
    EXPECT_LE(RelativeError(analytic, numeric), 1e-5) << "trial " << trial;
  }
}

TEST(DplTest, SymmetricModelHasZeroLoss) {
  Model m = *Model::Create({.dim = 3, .num_classes = 2});
  std::vector<LabeledExample> pub = Blobs(200, 3, 5);
  absl::StatusOr<double> loss = DplLoss(m, pub, 2, {.temperature = 0.5});
  ASSERT_TRUE(loss.ok());
  EXPECT_NEAR(*loss, 0.0, 1e-15);
}

TEST(DplTest, ColdLimitEqualsHardCountDisparity) {
  std::vector<LabeledExample> pub = Blobs(300, 3, 6);
  Model m = *Model::Create({.dim = 3, .num_classes = 2});
  std::span<double> w = m.mutable_params();
  // Class 1 iff x0 + 0.8 x1 > 0, with large margins.
  w[3] = 50.0;
  w[4] = 40.0;
  std::vector<ClassId> predictions;
  std::vector<GroupId> groups;
  for (const LabeledExample& e : pub) {
    predictions.push_back(m.Predict(e.features));
    groups.push_back(e.group);
  }
  const double hard =
      *MaxDisparity(*ComputeDisparityMatrix(predictions, groups, 2, 2));
  absl::StatusOr<double> soft = DplLoss(m, pub, 2, {.temperature = 1e-3});
  ASSERT_TRUE(soft.ok());
  EXPECT_NEAR(*soft, hard, 1e-3);
}

TEST(DplTest, GradientMatchesFiniteDifferences) {
  SeededRng rng(23);
  const DisparityVariant variants[] = {DisparityVariant::kToOverallNoDoubleCount,
                                       DisparityVariant::kToOverall,
                                       DisparityVariant::kBetweenGroups};
  for (int trial = 0; trial < 30; ++trial) {
    const Architecture arch =
        trial % 2 == 0 ? Architecture::kSoftmaxRegression : Architecture::kMlp;
    const int dim = 3;
    Model m = MakeModel(arch, dim, 2 + trial % 2, 200 + trial);
    std::vector<LabeledExample> pub = Blobs(60, dim, 300 + trial);
    const DplOptions opts{.temperature = 0.5, .variant = variants[trial % 3]};
    absl::StatusOr<DplResult> r = Dpl(m, pub, 2, opts);
    ASSERT_TRUE(r.ok());
    std::vector<double> numeric(m.parameter_count());
    constexpr double kH = 1e-6;
    for (size_t j = 0; j < numeric.size(); ++j) {
      const double saved = m.params()[j];
      m.mutable_params()[j] = saved + kH;
      const double up = *DplLoss(m, pub, 2, opts);
      m.mutable_params()[j] = saved - kH;
      const double down = *DplLoss(m, pub, 2, opts);
      m.mutable_params()[j] = saved;
      numeric[j] = (up - down) / (2.0 * kH);
    }
    EXPECT_LE(RelativeError(r->gradient, numeric), 1e-4) << "trial " << trial;
  }
}

TEST(DplTest, AllUndefinedIsAnError) {
  Model m = *Model::Create({.dim = 2, .num_classes = 2});
  std::vector<LabeledExample> pub = {{.features = {0.0, 0.0}, .group = 0}};
  EXPECT_FALSE(Dpl(m, pub, 2, {}).ok());
}

TEST(DpSgdTest, ZeroNoiseFullBatchIsGradientDescent) {
  std::vector<LabeledExample> data = Blobs(50, 3, 8);
  Model init = MakeModel(Architecture::kSoftmaxRegression, 3, 2, 9);
  const DpSgdParams params{.learning_rate = 0.3,
                           .noise_multiplier = 0.0,
                           .expected_batch = 50,
                           .clip_norm = INFINITY,
                           .steps = 40};
  SeededRng rng(1);
  absl::StatusOr<DpSgdResult> r = DpSgdTrain(data, init, params, rng);
  ASSERT_TRUE(r.ok()) << r.status();
  EXPECT_EQ(r->empty_batches, 0);

  Model gd = init;
  std::vector<double> sum(gd.parameter_count()), g(gd.parameter_count());
  for (int t = 0; t < 40; ++t) {
    std::fill(sum.begin(), sum.end(), 0.0);
    for (const LabeledExample& e : data) {
      std::fill(g.begin(), g.end(), 0.0);
      gd.CrossEntropyGradient(e.features, e.label, g);
      for (size_t j = 0; j < g.size(); ++j) sum[j] += g[j];
    }
    const double step = 0.3 / 50.0;
    for (size_t j = 0; j < sum.size(); ++j) gd.mutable_params()[j] -= step * sum[j];
  }
  EXPECT_TRUE(r->model == gd);
}

TEST(DpSgdTest, DeterministicUnderSeed) {
  std::vector<LabeledExample> data = Blobs(200, 3, 10);
  Model init = MakeModel(Architecture::kMlp, 3, 2, 11);
  const DpSgdParams params{.noise_multiplier = 1.2, .expected_batch = 20, .steps = 30};
  SeededRng a(5), b(5);
  EXPECT_TRUE(DpSgdTrain(data, init, params, a)->model ==
              DpSgdTrain(data, init, params, b)->model);
}

TEST(DpSgdTest, FairWithZeroWeightEqualsPlain) {
  std::vector<LabeledExample> data = Blobs(200, 3, 12);
  std::vector<LabeledExample> pub = Blobs(50, 3, 13);
  Model init = MakeModel(Architecture::kSoftmaxRegression, 3, 2, 14);
  const DpSgdParams params{.noise_multiplier = 0.8, .expected_batch = 25, .steps = 40};
  SeededRng a(6), b(6);
  absl::StatusOr<DpSgdResult> plain = DpSgdTrain(data, init, params, a);
  absl::StatusOr<DpSgdResult> fair = FairDpSgdTrain(
      data, pub, init, params, {.reg_weight = 0.0, .dpl = {.temperature = 0.1}}, b);
  ASSERT_TRUE(plain.ok() && fair.ok());
  EXPECT_TRUE(plain->model == fair->model);
  EXPECT_EQ(plain->epsilon, fair->epsilon);
}

TEST(DpSgdTest, RegularizerDoesNotChangeEpsilon) {
  std::vector<LabeledExample> data = Blobs(200, 3, 15);
  std::vector<LabeledExample> pub = Blobs(50, 3, 16);
  Model init = MakeModel(Architecture::kSoftmaxRegression, 3, 2, 17);
  const DpSgdParams params{.noise_multiplier = 0.8, .expected_batch = 25, .steps = 40};
  SeededRng a(6), b(6);
  absl::StatusOr<DpSgdResult> plain = DpSgdTrain(data, init, params, a);
  absl::StatusOr<DpSgdResult> fair = FairDpSgdTrain(
      data, pub, init, params, {.reg_weight = 5.0, .dpl = {.temperature = 0.1}}, b);
  ASSERT_TRUE(plain.ok() && fair.ok());
  EXPECT_EQ(plain->epsilon, fair->epsilon);
  EXPECT_FALSE(plain->model == fair->model);
}

TEST(DpSgdTest, EpsilonMatchesReference) {
  absl::StatusOr<double> eps = DpSgdEpsilon(0.01, 1.0, 1000, 1e-5, DefaultOrders());
  ASSERT_TRUE(eps.ok());
  EXPECT_NEAR(*eps, kDpSgdReferenceEpsilon, 1e-9 * kDpSgdReferenceEpsilon);
}

TEST(DpSgdTest, CalibrationHitsTarget) {
  for (double target : {0.5, 1.0, 3.0}) {
    absl::StatusOr<double> sigma =
        CalibrateNoiseMultiplier(0.02, 500, 1e-5, target, DefaultOrders());
    ASSERT_TRUE(sigma.ok());
    const double eps = *DpSgdEpsilon(0.02, *sigma, 500, 1e-5, DefaultOrders());
    EXPECT_LE(eps, target);
    EXPECT_GE(eps, 0.995 * target);
  }
}

TEST(DpSgdTest, ValidatesParameters) {
  EXPECT_FALSE((DpSgdParams{.clip_norm = INFINITY}).Validate(100).ok());
  EXPECT_FALSE((DpSgdParams{.expected_batch = 200}).Validate(100).ok());
  EXPECT_FALSE((DpSgdParams{.steps = 0}).Validate(100).ok());
  EXPECT_FALSE(DpSgdParams{}.Validate(0).ok());
  EXPECT_TRUE((DpSgdParams{.noise_multiplier = 0.0, .clip_norm = INFINITY})
                  .Validate(100)
                  .ok());
}

TEST(SupervisedTest, LearnsSeparableData) {
  std::vector<LabeledExample> data = Blobs(1000, 4, 20);
  std::vector<LabeledExample> test = Blobs(500, 4, 21);
  absl::StatusOr<Model> m =
      TrainSupervised(data, {.dim = 4, .num_classes = 2}, {.epochs = 20, .seed = 3});
  ASSERT_TRUE(m.ok());
  int correct = 0;
  for (const LabeledExample& e : test) correct += m->Predict(e.features) == e.label;
  EXPECT_GE(correct / 500.0, 0.95);
  absl::StatusOr<Model> again =
      TrainSupervised(data, {.dim = 4, .num_classes = 2}, {.epochs = 20, .seed = 3});
  EXPECT_TRUE(*m == *again);
}

TEST(SupervisedTest, EmptyDataIsAnError) {
  absl::StatusOr<Model> m = TrainSupervised({}, {.dim = 4, .num_classes = 2}, {});
  EXPECT_EQ(m.status().code(), absl::StatusCode::kFailedPrecondition);
}

TEST(CheckpointTest, RoundTrip) {
  const std::string path =
      (std::filesystem::temp_directory_path() / "ff_checkpoint_test.bin").string();
  Model m = MakeModel(Architecture::kMlp, 3, 3, 30, 0.5, 7);
  ASSERT_TRUE(SaveCheckpoint(path, m, 1234).ok());
  absl::StatusOr<Checkpoint> c = LoadCheckpoint(path);
  ASSERT_TRUE(c.ok()) << c.status();
  EXPECT_TRUE(c->model == m);
  EXPECT_EQ(c->seed, 1234u);

  // Truncate the parameter block.
  std::filesystem::resize_file(path, std::filesystem::file_size(path) - 8);
  EXPECT_EQ(LoadCheckpoint(path).status().code(), absl::StatusCode::kDataLoss);
  std::remove(path.c_str());
  EXPECT_EQ(LoadCheckpoint(path).status().code(), absl::StatusCode::kNotFound);
}

}  // namespace
}  // namespace fairfrontier
