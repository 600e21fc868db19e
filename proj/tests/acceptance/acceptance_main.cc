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

// Acceptance checks. Prints one [PASS]/[FAIL] line per criterion and exits
// nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "absl/strings/str_format.h"
#include "fairfrontier/accounting/rdp.h"
#include "fairfrontier/aggregation/gnmax.h"
#include "fairfrontier/core/rng.h"
#include "fairfrontier/fairness/group_privacy.h"
#include "fairfrontier/fairness/offline_preprocess.h"
#include "fairfrontier/fairness/stream_processors.h"
#include "fairfrontier/harness/experiments.h"
#include "fairfrontier/harness/grid.h"
#include "fairfrontier/harness/synthetic.h"
#include "fairfrontier/learners/dp_sgd.h"
#include "fairfrontier/learners/dpl.h"
#include "fairfrontier/learners/model.h"
#include "fairfrontier/pareto/pareto.h"

namespace fairfrontier {
namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  std::vector<std::string> notes;

  void Fail(std::string why) {
    if (pass) detail = std::move(why);
    pass = false;
  }
};

using Clock = std::chrono::steady_clock;

double Seconds(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void CheckRuntime(Outcome& out, double seconds, double limit) {
  if (seconds >= limit) {
    out.Fail(absl::StrFormat("runtime %.1f s over the %.0f s limit", seconds,
                             limit));
  }
}

// ---------------------------------------------------------------------------
// 1. Accounting identities.

Outcome AccountingIdentities() {
  Outcome out;
  const auto start = Clock::now();
  const std::vector<double> orders = DefaultOrders();

  // sqrt(2) is not representable, so the squared sensitivity is 2(1 + 2^-52)
  // at best; the identity is checked to within that representation error and
  // exactly on the noisy-argmax curve that uses it.
  double worst_rel = 0.0;
  for (double lambda : orders) {
    const double got = GaussianRdp(1.0, std::sqrt(2.0), lambda);
    worst_rel = std::max(worst_rel, std::abs(got - lambda) / lambda);
  }
  if (worst_rel > 4 * std::numeric_limits<double>::epsilon()) {
    out.Fail(absl::StrFormat("gaussian_rdp(1, sqrt2) rel err %g", worst_rel));
  }
  for (double sigma : {0.5, 1.0, 2.0, 20.0, 40.0}) {
    const RdpCurve curve = GnmaxRdpCurve(sigma, orders);
    for (size_t i = 0; i < orders.size(); ++i) {
      if (curve.values()[i] != orders[i] / (sigma * sigma)) {
        out.Fail(absl::StrFormat("gnmax curve sigma=%g order=%g", sigma,
                                 orders[i]));
      }
    }
  }
  out.notes.push_back(absl::StrFormat(
      "gaussian_rdp(sigma=1, sqrt2, order) max rel deviation %.2g (sqrt2 "
      "rounding); argmax curve exact",
      worst_rel));

  for (double sigma : {0.5, 0.8, 1.0, 1.7, 3.0, 10.0}) {
    for (double lambda : orders) {
      auto got = SubsampledGaussianRdp(1.0, sigma, lambda);
      if (!got.ok() || *got != lambda / (2 * sigma * sigma)) {
        out.Fail(absl::StrFormat("subsampled q=1 sigma=%g order=%g", sigma,
                                 lambda));
      }
    }
  }

  // rdp_to_dp against a grid search over continuous orders for curves
  // c * order, whose exact optimum is c + 2 sqrt(c log(1/delta)).
  std::mt19937_64 gen(1);
  std::uniform_real_distribution<double> log_c(std::log(2e-3), std::log(2.0));
  std::uniform_real_distribution<double> log_delta(std::log(1e-8),
                                                   std::log(1e-4));
  double worst = 0.0;
  std::vector<double> fine;
  for (double a = 1.25; a <= 256.0; a += 0.25) fine.push_back(a);
  for (int trial = 0; trial < 20; ++trial) {
    const double c = std::exp(log_c(gen));
    const double delta = std::exp(log_delta(gen));
    const double log_inv = std::log(1 / delta);
    std::vector<double> values;
    for (double a : fine) values.push_back(c * a);
    auto curve = RdpCurve::Create(fine, values);
    auto eps = RdpToDp(*curve, delta);
    double oracle = std::numeric_limits<double>::infinity();
    for (double a = 1.001; a <= 256.0; a += 0.001) {
      oracle = std::min(oracle, c * a + log_inv / (a - 1));
    }
    const double closed = c + 2 * std::sqrt(c * log_inv);
    if (!eps.ok()) {
      out.Fail("rdp_to_dp failed");
      continue;
    }
    worst = std::max(worst, std::abs(*eps - oracle) / oracle);
    if (std::abs(oracle - closed) / closed > 1e-4) {
      out.Fail("grid oracle disagrees with the closed form");
    }
  }
  if (worst > 0.01) out.Fail(absl::StrFormat("rdp_to_dp rel err %g", worst));
  out.notes.push_back(
      absl::StrFormat("rdp_to_dp vs grid oracle: max rel err %.2g", worst));
  const double secs = Seconds(start);
  CheckRuntime(out, secs, 1.0);
  if (out.pass) out.detail = absl::StrFormat("%.3f s", secs);
  return out;
}

// ---------------------------------------------------------------------------
// 2 and 3. Noisy-argmax bound and data-dependent accounting.

std::vector<VoteHistogram> VoteCorpus() {
  std::mt19937_64 gen(2);
  std::vector<VoteHistogram> corpus;
  for (int i = 0; i < 50; ++i) {
    const int k = 2 + static_cast<int>(gen() % 9);
    // Dirichlet-like weights with a sharpness that spans near-ties to
    // near-unanimity.
    std::gamma_distribution<double> shape(0.2 + 0.1 * (i % 10));
    std::vector<double> w(k);
    double total = 0;
    for (double& x : w) total += (x = shape(gen) + 1e-9);
    std::vector<int64_t> votes(k, 0);
    std::discrete_distribution<int> pick(w.begin(), w.end());
    for (int t = 0; t < 200; ++t) ++votes[pick(gen)];
    corpus.push_back(*VoteHistogram::Create(votes));
  }
  return corpus;
}

Outcome NoisyArgmaxBound() {
  Outcome out;
  const auto start = Clock::now();
  constexpr double kSigma = 20.0;
  constexpr int kDraws = 1000000;
  std::mt19937_64 gen(3);
  std::normal_distribution<double> noise(0.0, kSigma);
  double worst_z = -std::numeric_limits<double>::infinity();
  for (const VoteHistogram& hist : VoteCorpus()) {
    const ClassId top = hist.Plurality();
    const auto votes = hist.votes();
    int64_t wrong = 0;
    for (int d = 0; d < kDraws; ++d) {
      double best = -std::numeric_limits<double>::infinity();
      int arg = 0;
      for (int c = 0; c < hist.num_classes(); ++c) {
        const double v = static_cast<double>(votes[c]) + noise(gen);
        if (v > best) {
          best = v;
          arg = c;
        }
      }
      wrong += arg != top;
    }
    const double rate = static_cast<double>(wrong) / kDraws;
    const double bound = QTilde(hist, kSigma);
    const double sd = std::sqrt(bound * (1 - bound) / kDraws);
    const double excess = rate - bound;
    if (excess > 3 * sd + 1e-12) {
      out.Fail(absl::StrFormat("rate %.6f exceeds bound %.6f by > 3 sd", rate,
                               bound));
    }
    if (sd > 0) worst_z = std::max(worst_z, excess / sd);
  }
  const double tie = QTilde(*VoteHistogram::Create({100, 100}), kSigma);
  if (tie != 0.5) out.Fail(absl::StrFormat("tie histogram gives %.17g", tie));
  out.notes.push_back(absl::StrFormat(
      "largest (rate - bound) / sd over 50 histograms: %.2f", worst_z));
  const double secs = Seconds(start);
  CheckRuntime(out, secs, 120.0);
  if (out.pass) out.detail = absl::StrFormat("%.1f s", secs);
  return out;
}

Outcome DataDependentDominance() {
  Outcome out;
  constexpr double kSigma = 20.0;
  const std::vector<double> orders = DefaultOrders();
  for (const VoteHistogram& hist : VoteCorpus()) {
    const double log_q = LogQTilde(hist, kSigma);
    for (double lambda : orders) {
      const double dd = DataDependentRdp(log_q, kSigma, lambda).value;
      if (!(dd <= lambda / (kSigma * kSigma))) {
        out.Fail(absl::StrFormat("order %g: %g above the cap", lambda, dd));
      }
    }
  }
  for (double lambda : orders) {
    const double cap = lambda / (kSigma * kSigma);
    if (DataDependentRdpFromQ(1.0, kSigma, lambda).value != cap) {
      out.Fail(absl::StrFormat("q=1 at order %g is not the cap", lambda));
    }
  }
  for (double lambda : orders) {
    double prev = std::numeric_limits<double>::infinity();
    for (int margin = 0; margin <= 200; margin += 2) {
      const int64_t a = 100 + margin / 2;
      const auto hist = VoteHistogram::Create({a, 200 - a});
      const double dd =
          DataDependentRdp(LogQTilde(*hist, kSigma), kSigma, lambda).value;
      if (dd > prev) {
        out.Fail(absl::StrFormat("order %g: increases at margin %d", lambda,
                                 margin));
        break;
      }
      prev = dd;
    }
  }
  if (out.pass) out.detail = "50 histograms x 65 orders; margin sweep 0..200";
  return out;
}

// ---------------------------------------------------------------------------
// 4. Group-privacy cost of the ordered offline pre-processor.

Outcome OfflineGroupPrivacy() {
  Outcome out;
  const auto start = Clock::now();
  std::mt19937_64 gen(4);
  int64_t additions = 0;
  int worst_seen = 0;
  for (int d = 0; d < 200; ++d) {
    const int n = 1 + static_cast<int>(gen() % 40);
    std::vector<int> slots(n);
    for (int i = 0; i < n; ++i) slots[i] = 2 * i;
    std::shuffle(slots.begin(), slots.end(), gen);
    // Skewed group and label frequencies so the filter actually trims.
    const double p_group = 0.2 + 0.6 * (gen() % 1000) / 1000.0;
    const double p_label = 0.2 + 0.6 * (gen() % 1000) / 1000.0;
    std::bernoulli_distribution gz(p_group), gy(p_label);
    std::vector<LabeledExample> data;
    for (int i = 0; i < n; ++i) {
      data.push_back({.features = {static_cast<double>(slots[i])},
                      .group = gz(gen) ? 1 : 0,
                      .label = gy(gen) ? 1 : 0});
    }
    for (double gamma : {0.0, 0.25, 0.5}) {
      const int k_gamma = *KGamma(gamma);
      auto base = OrderedOfflinePreprocess(data, gamma);
      if (!base.ok()) {
        out.Fail(std::string(base.status().message()));
        return out;
      }
      std::set<double> kept;
      for (size_t i : *base) kept.insert(data[i].features[0]);
      for (int pos = -1; pos <= 2 * n + 1; pos += 2) {
        for (int z = 0; z < 2; ++z) {
          for (int y = 0; y < 2; ++y) {
            std::vector<LabeledExample> grown = data;
            grown.push_back({.features = {static_cast<double>(pos)},
                             .group = z,
                             .label = y});
            auto next = OrderedOfflinePreprocess(grown, gamma);
            std::set<double> kept2;
            for (size_t i : *next) kept2.insert(grown[i].features[0]);
            std::vector<double> diff;
            std::set_symmetric_difference(kept.begin(), kept.end(),
                                          kept2.begin(), kept2.end(),
                                          std::back_inserter(diff));
            const int changed = static_cast<int>(diff.size());
            worst_seen = std::max(worst_seen, changed);
            ++additions;
            if (changed > k_gamma) {
              out.Fail(absl::StrFormat(
                  "gamma %g: one addition changed %d > %d outputs", gamma,
                  changed, k_gamma));
            }
          }
        }
      }
    }
  }
  out.notes.push_back(absl::StrFormat(
      "%d single-point additions checked; largest change %d", additions,
      worst_seen));
  const double secs = Seconds(start);
  CheckRuntime(out, secs, 60.0);
  if (out.pass) out.detail = absl::StrFormat("%.2f s", secs);
  return out;
}

// ---------------------------------------------------------------------------
// Shared grids for the trend, placement and gate checks.

struct Grids {
  std::optional<GridResult> trend;
  GridSpec trend_spec;
  std::optional<GridResult> fair_pate;
  std::optional<GridResult> pre;
  std::optional<GridResult> fair_pate_free;
  GridSpec placement_spec;
  std::optional<GridResult> dpsgd;
  GridSpec dpsgd_spec;
  double trend_seconds = 0.0;
  std::string error;
};

Grids& SharedGrids() {
  static Grids* grids = [] {
    auto* g = new Grids;
    const uint64_t master = 2026;

    g->trend_spec.framework = Framework::kFairPate;
    g->trend_spec.eps_values = {1.0, 2.0, 3.0};
    g->trend_spec.fairness_values = {0.01, 0.05, 0.1};
    g->trend_spec.seeds = {1, 2, 3};
    auto start = Clock::now();
    auto trend = RunGrid(g->trend_spec, master, 1);
    g->trend_seconds = Seconds(start);
    if (!trend.ok()) {
      g->error = std::string(trend.status().message());
      return g;
    }
    g->trend = *std::move(trend);

    g->placement_spec.eps_values = {3.0};
    g->placement_spec.fairness_values = {0.01};
    g->placement_spec.seeds = {1, 2, 3, 4, 5};
    g->placement_spec.framework = Framework::kFairPate;
    auto fair = RunGrid(g->placement_spec, master, 1);
    g->placement_spec.framework = Framework::kPatePre;
    auto pre = RunGrid(g->placement_spec, master, 1);
    GridSpec free_spec = g->placement_spec;
    free_spec.framework = Framework::kFairPate;
    free_spec.pate.charge_fairness_rejected = false;
    auto free_run = RunGrid(free_spec, master, 1);
    if (!fair.ok() || !pre.ok() || !free_run.ok()) {
      g->error = "placement grid failed";
      return g;
    }
    g->fair_pate = *std::move(fair);
    g->pre = *std::move(pre);
    g->fair_pate_free = *std::move(free_run);

    g->dpsgd_spec.framework = Framework::kFairDpSgd;
    g->dpsgd_spec.eps_values = {1.0, 3.0};
    g->dpsgd_spec.fairness_values = {0.0, 1.0, 10.0};
    g->dpsgd_spec.seeds = {1};
    auto dpsgd = RunGrid(g->dpsgd_spec, master, 1);
    if (!dpsgd.ok()) {
      g->error = std::string(dpsgd.status().message());
      return g;
    }
    g->dpsgd = *std::move(dpsgd);
    return g;
  }();
  return *grids;
}

// ---------------------------------------------------------------------------
// 5. Gate soundness by trace replay.

void ReplayCell(const GridCellResult& cell, int num_groups, int num_classes,
                Outcome& out, int64_t& accepts) {
  const ExperimentRecord& r = cell.record;
  if (!cell.aggregation_trace.empty()) {
    auto replay = ReplayGateTrace(cell.aggregation_trace, num_groups,
                                  num_classes, cell.aggregation_gate);
    if (!replay.ok()) {
      out.Fail(std::string(replay.status().message()));
      return;
    }
    accepts += replay->answered;
    if (replay->answered != static_cast<int64_t>(r.extra.at("queries_answered"))) {
      out.Fail("aggregator counter total differs from the answered count");
    }
    if (replay->final_counts.Total() != replay->answered) {
      out.Fail("aggregator counter total differs from its answers");
    }
  }
  if (!cell.inference_trace.empty()) {
    auto replay = ReplayGateTrace(cell.inference_trace, num_groups,
                                  num_classes, cell.inference_gate);
    if (!replay.ok()) {
      out.Fail(std::string(replay.status().message()));
      return;
    }
    accepts += replay->answered;
    const double rate = static_cast<double>(replay->answered) /
                        static_cast<double>(cell.inference_trace.size());
    const double recorded = r.framework == Framework::kFairDpSgd
                                ? r.coverage
                                : r.extra.at("inference_coverage");
    if (std::abs(rate - recorded) > 1e-6) {
      out.Fail("post-processor counter disagrees with recorded coverage");
    }
    if (replay->final_counts.Total() != replay->answered) {
      out.Fail("post-processor counter total differs from its answers");
    }
  }
}

Outcome GateSoundness() {
  Outcome out;
  Grids& g = SharedGrids();
  if (!g.error.empty()) {
    out.Fail(g.error);
    return out;
  }
  int64_t accepts = 0;
  int traces = 0;
  const int z = g.trend_spec.data.num_groups;
  const int k = g.trend_spec.data.num_classes;
  for (const GridResult* grid : {&*g.trend, &*g.fair_pate, &*g.pre,
                                 &*g.fair_pate_free, &*g.dpsgd}) {
    for (const GridCellResult& cell : grid->cells) {
      traces += !cell.aggregation_trace.empty();
      traces += !cell.inference_trace.empty();
      ReplayCell(cell, z, k, out, accepts);
    }
  }

  // A direct post-processor run on a scrambled stream at several margins.
  std::mt19937_64 gen(5);
  for (double rho : {0.0, 0.02, 0.1, 0.3}) {
    for (DisparityVariant v :
         {DisparityVariant::kToOverallNoDoubleCount,
          DisparityVariant::kToOverall, DisparityVariant::kBetweenGroups}) {
      std::vector<PostprocessQuery> stream;
      for (int i = 0; i < 3000; ++i) {
        stream.push_back({static_cast<int>(gen() % 3),
                          static_cast<int>(gen() % 4)});
      }
      const GateParams params{.rho_fair = rho, .min_count = 15, .variant = v};
      auto run = PostprocessStream(stream, 3, 4, params);
      auto replay = ReplayGateTrace(run->trace, 3, 4, params);
      if (!replay.ok()) {
        out.Fail(std::string(replay.status().message()));
        continue;
      }
      int64_t answered = 0;
      for (const Prediction& p : run->outputs) answered += p.has_value();
      if (answered != replay->answered ||
          replay->final_counts.Total() != answered) {
        out.Fail("direct post-processor counter mismatch");
      }
      accepts += replay->answered;
      ++traces;
    }
  }
  if (traces < 20) out.Fail(absl::StrFormat("only %d traces replayed", traces));
  if (out.pass) {
    out.detail = absl::StrFormat("%d traces, %d accepts replayed", traces,
                                 accepts);
  }
  return out;
}

// ---------------------------------------------------------------------------
// 6. Reduction ladder.

std::vector<LabeledExample> RandomExamples(std::mt19937_64& gen, int n, int dim,
                                           int num_groups, int num_classes) {
  std::normal_distribution<double> normal;
  std::vector<LabeledExample> data;
  for (int i = 0; i < n; ++i) {
    LabeledExample ex;
    for (int j = 0; j < dim; ++j) ex.features.push_back(normal(gen));
    ex.group = static_cast<int>(gen() % num_groups);
    ex.label = static_cast<int>(gen() % num_classes);
    ex.features[0] += ex.label;
    data.push_back(std::move(ex));
  }
  return data;
}

bool SameOutcome(const AggregationOutcome& a, const AggregationOutcome& b) {
  return a.result == b.result && a.rejected_by == b.rejected_by &&
         a.noisy_argmax == b.noisy_argmax &&
         a.noisy_argmax_computed == b.noisy_argmax_computed;
}

Outcome ReductionLadder() {
  Outcome out;
  std::mt19937_64 gen(6);

  // Fair aggregator with a vacuous gate against the plain aggregator.
  int64_t queries = 0;
  for (const VoteHistogram& hist : VoteCorpus()) {
    AggregatorParams params{.threshold = 110, .sigma1 = 40, .sigma2 = 20};
    params.gate = {.rho_fair = 1.0, .min_count = 0};
    GroupClassCounter counts(3, hist.num_classes());
    const uint64_t seed = gen();
    SeededRng a(seed), b(seed);
    for (int q = 0; q < 200; ++q) {
      const GroupId z = q % 3;
      const AggregationOutcome fair =
          ConfidentFairGnmax(hist, z, counts, params, a);
      const AggregationOutcome plain = ConfidentGnmax(hist, params, b);
      ++queries;
      if (!SameOutcome(fair, plain)) {
        out.Fail(absl::StrFormat("aggregators diverge at query %d", q));
        break;
      }
    }
    if (a.NextU64() != b.NextU64()) out.Fail("aggregator rng streams diverge");
  }

  // FairDP-SGD with zero weight against DP-SGD.
  int dpsgd_runs = 0;
  for (int trial = 0; trial < 6; ++trial) {
    const int dim = 3 + trial % 3;
    auto data = RandomExamples(gen, 120, dim, 2, 2 + trial % 2);
    auto pub = RandomExamples(gen, 40, dim, 2, 2 + trial % 2);
    ModelConfig mc{.architecture = trial % 2 ? Architecture::kMlp
                                             : Architecture::kSoftmaxRegression,
                   .dim = dim,
                   .num_classes = 2 + trial % 2,
                   .hidden_width = 5};
    auto model = Model::Create(mc);
    SeededRng init(gen());
    model->InitializeGaussian(init, 0.3);
    DpSgdParams p{.learning_rate = 0.3,
                  .noise_multiplier = 1.1,
                  .expected_batch = 30,
                  .clip_norm = 1.0,
                  .steps = 40,
                  .delta = 1e-5};
    const uint64_t seed = gen();
    SeededRng r1(seed), r2(seed);
    auto fair = FairDpSgdTrain(data, pub, *model, p,
                               {.reg_weight = 0.0,
                                .dpl = {.temperature = 0.1},
                                .num_groups = 2},
                               r1);
    auto plain = DpSgdTrain(data, *model, p, r2);
    ++dpsgd_runs;
    if (!fair.ok() || !plain.ok() || !(fair->model == plain->model) ||
        fair->epsilon != plain->epsilon ||
        fair->empty_batches != plain->empty_batches) {
      out.Fail("zero-weight FairDP-SGD differs from DP-SGD");
    }
  }

  // Noiseless full-batch unclipped DP-SGD against gradient descent.
  for (int trial = 0; trial < 6; ++trial) {
    const int dim = 2 + trial % 4;
    const int classes = 2 + trial % 3;
    auto data = RandomExamples(gen, 50, dim, 2, classes);
    ModelConfig mc{.architecture = trial % 2 ? Architecture::kMlp
                                             : Architecture::kSoftmaxRegression,
                   .dim = dim,
                   .num_classes = classes,
                   .hidden_width = 4};
    auto model = Model::Create(mc);
    SeededRng init(gen());
    model->InitializeGaussian(init, 0.3);
    const double lr = 0.2;
    DpSgdParams p{.learning_rate = lr,
                  .noise_multiplier = 0.0,
                  .expected_batch = 50,
                  .clip_norm = std::numeric_limits<double>::infinity(),
                  .steps = 25,
                  .delta = 1e-5};
    SeededRng rng(gen());
    auto trained = DpSgdTrain(data, *model, p, rng);
    if (!trained.ok()) {
      out.Fail(std::string(trained.status().message()));
      continue;
    }
    Model gd = *model;
    const size_t np = gd.parameter_count();
    for (int t = 0; t < 25; ++t) {
      std::vector<double> total(np, 0.0);
      for (const LabeledExample& ex : data) {
        std::vector<double> g(np, 0.0);
        gd.CrossEntropyGradient(ex.features, ex.label, g);
        for (size_t j = 0; j < np; ++j) total[j] += g[j];
      }
      const double step = lr / static_cast<double>(data.size());
      auto theta = gd.mutable_params();
      for (size_t j = 0; j < np; ++j) theta[j] -= step * total[j];
    }
    if (!(gd == trained->model)) {
      out.Fail("noiseless full-batch DP-SGD differs from gradient descent");
    }
  }
  if (out.pass) {
    out.detail = absl::StrFormat(
        "%d aggregator queries, %d DP-SGD pairs, 6 GD pairs, all bit-exact",
        queries, dpsgd_runs);
  }
  return out;
}

// ---------------------------------------------------------------------------
// 7. Gradient checks.

double RelError(const std::vector<double>& a, const std::vector<double>& b) {
  double diff = 0, na = 0, nb = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    diff += (a[i] - b[i]) * (a[i] - b[i]);
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  const double scale = std::max({std::sqrt(na), std::sqrt(nb), 1e-8});
  return std::sqrt(diff) / scale;
}

Outcome GradientChecks() {
  Outcome out;
  std::mt19937_64 gen(7);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> temp(0.1, 1.0);
  double worst_ce = 0, worst_dpl = 0;
  for (int config = 0; config < 100; ++config) {
    const int dim = 2 + static_cast<int>(gen() % 5);
    const int classes = 2 + static_cast<int>(gen() % 3);
    const int groups = 2 + static_cast<int>(gen() % 2);
    ModelConfig mc{.architecture = gen() % 2 ? Architecture::kMlp
                                             : Architecture::kSoftmaxRegression,
                   .dim = dim,
                   .num_classes = classes,
                   .hidden_width = 2 + static_cast<int>(gen() % 6)};
    auto model = Model::Create(mc);
    SeededRng init(gen());
    model->InitializeGaussian(init, 0.5);
    const size_t np = model->parameter_count();
    const double h = 1e-5;

    std::vector<double> x(dim);
    for (double& v : x) v = normal(gen);
    const ClassId label = static_cast<int>(gen() % classes);
    std::vector<double> analytic(np, 0.0);
    model->CrossEntropyGradient(x, label, analytic);
    std::vector<double> numeric(np);
    for (size_t j = 0; j < np; ++j) {
      Model plus = *model, minus = *model;
      plus.mutable_params()[j] += h;
      minus.mutable_params()[j] -= h;
      numeric[j] = (plus.CrossEntropy(x, label) -
                    minus.CrossEntropy(x, label)) / (2 * h);
    }
    worst_ce = std::max(worst_ce, RelError(analytic, numeric));

    auto pub = RandomExamples(gen, 30, dim, groups, classes);
    for (int i = 0; i < groups; ++i) pub[i].group = i;
    const DplOptions opts{.temperature = temp(gen)};
    auto dpl = Dpl(*model, pub, groups, opts);
    if (!dpl.ok()) {
      out.Fail(std::string(dpl.status().message()));
      continue;
    }
    for (size_t j = 0; j < np; ++j) {
      Model plus = *model, minus = *model;
      plus.mutable_params()[j] += h;
      minus.mutable_params()[j] -= h;
      numeric[j] = (*DplLoss(plus, pub, groups, opts) -
                    *DplLoss(minus, pub, groups, opts)) / (2 * h);
    }
    worst_dpl = std::max(worst_dpl, RelError(dpl->gradient, numeric));
  }
  if (worst_ce > 1e-4) {
    out.Fail(absl::StrFormat("cross-entropy rel err %.2g", worst_ce));
  }
  if (worst_dpl > 1e-4) out.Fail(absl::StrFormat("DPL rel err %.2g", worst_dpl));
  if (out.pass) {
    out.detail = absl::StrFormat("100 configs; max rel err loss %.1e, DPL %.1e",
                                 worst_ce, worst_dpl);
  }
  return out;
}

// ---------------------------------------------------------------------------
// 8. Pareto oracle.

std::vector<size_t> BruteFrontier(const std::vector<ExperimentRecord>& recs) {
  auto better_or_equal = [](const ExperimentRecord& a,
                            const ExperimentRecord& b) {
    return a.eps_achieved <= b.eps_achieved &&
           a.max_disparity <= b.max_disparity && a.accuracy >= b.accuracy &&
           a.coverage >= b.coverage;
  };
  auto strictly = [](const ExperimentRecord& a, const ExperimentRecord& b) {
    return a.eps_achieved < b.eps_achieved ||
           a.max_disparity < b.max_disparity || a.accuracy > b.accuracy ||
           a.coverage > b.coverage;
  };
  std::vector<size_t> keep;
  for (size_t i = 0; i < recs.size(); ++i) {
    bool dominated = false;
    for (size_t j = 0; j < recs.size() && !dominated; ++j) {
      dominated = better_or_equal(recs[j], recs[i]) && strictly(recs[j], recs[i]);
    }
    if (!dominated) keep.push_back(i);
  }
  return keep;
}

Outcome ParetoOracle() {
  Outcome out;
  const auto start = Clock::now();
  std::mt19937_64 gen(8);
  const ObjectiveSpec spec = ObjectiveSpec::Default();
  size_t largest = 0;
  for (int set = 0; set < 100; ++set) {
    const size_t n = set == 0 ? 0 : (set == 1 ? 1000 : 1 + gen() % 1000);
    largest = std::max(largest, n);
    // Coarse levels force ties and duplicates.
    const int levels = 2 + static_cast<int>(gen() % 40);
    auto level = [&] { return static_cast<double>(gen() % levels) / levels; };
    std::vector<ExperimentRecord> recs(n);
    for (auto& r : recs) {
      r.eps_achieved = 3 * level();
      r.max_disparity = level();
      r.accuracy = level();
      r.coverage = level();
    }
    if (FrontierIndices(recs, spec) != BruteFrontier(recs)) {
      out.Fail(absl::StrFormat("set %d (n=%d) differs from brute force", set, n));
    }
    const auto front = Frontier(recs, spec);
    if (Frontier(front, spec) != front) {
      out.Fail(absl::StrFormat("set %d: frontier not idempotent", set));
    }
  }
  const double secs = Seconds(start);
  CheckRuntime(out, secs, 10.0);
  if (out.pass) {
    out.detail = absl::StrFormat("100 sets up to n=%d, %.2f s", largest, secs);
  }
  return out;
}

// ---------------------------------------------------------------------------
// 9. Coverage and accuracy trend over the (eps, gamma) grid.

Outcome TrendGrid() {
  Outcome out;
  Grids& g = SharedGrids();
  if (!g.error.empty()) {
    out.Fail(g.error);
    return out;
  }
  const auto& eps = g.trend_spec.eps_values;
  const auto& gam = g.trend_spec.fairness_values;
  std::vector<std::vector<double>> cov(eps.size(),
                                       std::vector<double>(gam.size())),
      acc = cov;
  for (const GridCellResult& cell : g.trend->cells) {
    const size_t e = std::find(eps.begin(), eps.end(), cell.record.eps_spec) -
                     eps.begin();
    const size_t f = std::find(gam.begin(), gam.end(),
                               cell.record.fairness_spec) - gam.begin();
    cov[e][f] += cell.record.coverage / g.trend_spec.seeds.size();
    acc[e][f] += cell.record.accuracy / g.trend_spec.seeds.size();
  }
  int inversions = 0;
  double worst_drop = 0;
  auto step = [&](double from, double to) {
    if (to < from) {
      ++inversions;
      worst_drop = std::max(worst_drop, from - to);
    }
  };
  for (size_t e = 0; e < eps.size(); ++e) {
    for (size_t f = 0; f < gam.size(); ++f) {
      if (e + 1 < eps.size()) step(cov[e][f], cov[e + 1][f]);
      if (f + 1 < gam.size()) step(cov[e][f], cov[e][f + 1]);
    }
  }
  if (inversions > 1 || worst_drop > 0.01) {
    out.Fail(absl::StrFormat("%d coverage inversions, largest %.4f",
                             inversions, worst_drop));
  }
  const double hi = acc.back().back();
  const double lo = acc.front().front();
  if (!(hi >= lo)) {
    out.Fail(absl::StrFormat("accuracy %.4f at the loosest cell < %.4f at the "
                             "tightest",
                             hi, lo));
  }
  for (size_t e = 0; e < eps.size(); ++e) {
    std::string row = absl::StrFormat("eps=%g coverage:", eps[e]);
    for (size_t f = 0; f < gam.size(); ++f) {
      row += absl::StrFormat(" %.4f", cov[e][f]);
    }
    row += "  accuracy:";
    for (size_t f = 0; f < gam.size(); ++f) {
      row += absl::StrFormat(" %.4f", acc[e][f]);
    }
    out.notes.push_back(row);
  }
  CheckRuntime(out, g.trend_seconds, 600.0);
  if (out.pass) {
    out.detail = absl::StrFormat(
        "%d seeds averaged, %d inversions, acc %.4f >= %.4f, %.0f s",
        g.trend_spec.seeds.size(), inversions, hi, lo, g.trend_seconds);
  }
  return out;
}

// ---------------------------------------------------------------------------
// 10. Fairness inside the aggregator against fairness pre-processing.

double MeanAccuracy(const GridResult& grid) {
  double sum = 0;
  for (const auto& cell : grid.cells) sum += cell.record.accuracy;
  return sum / grid.cells.size();
}

Outcome PlacementComparison() {
  Outcome out;
  Grids& g = SharedGrids();
  if (!g.error.empty()) {
    out.Fail(g.error);
    return out;
  }
  const double fair = MeanAccuracy(*g.fair_pate);
  const double pre = MeanAccuracy(*g.pre);
  const double free_acc = MeanAccuracy(*g.fair_pate_free);
  if (!(fair >= pre)) {
    out.Fail(absl::StrFormat("mean accuracy %.4f < pre-processing %.4f", fair,
                             pre));
  }
  std::string per_seed = "per seed (in-aggregator / pre):";
  for (size_t i = 0; i < g.fair_pate->cells.size(); ++i) {
    per_seed += absl::StrFormat(" %.4f/%.4f", g.fair_pate->cells[i].record.accuracy,
                                g.pre->cells[i].record.accuracy);
  }
  out.notes.push_back(per_seed);
  out.notes.push_back(absl::StrFormat(
      "info: without charging fairness rejections, mean accuracy %.4f",
      free_acc));
  if (out.pass) {
    out.detail = absl::StrFormat(
        "eps=3, gamma=0.01, 5 seeds: mean accuracy %.4f >= %.4f", fair, pre);
  }
  return out;
}

// ---------------------------------------------------------------------------
// 11. Disparity-variant ordering on the fixed three-group population.

Outcome VariantOrdering() {
  Outcome out;
  SyntheticSpec spec = ThreeGroupSpec();
  spec.seed = 11;
  auto examples = GenerateExamples(spec);
  if (!examples.ok()) {
    out.Fail(std::string(examples.status().message()));
    return out;
  }
  std::vector<PostprocessQuery> stream;
  for (const LabeledExample& ex : *examples) {
    stream.push_back({ex.group, ex.label});
  }
  auto answered = [&](DisparityVariant v, double rho, int64_t m) -> int64_t {
    const GateParams params{.rho_fair = rho, .min_count = m, .variant = v};
    auto run = PostprocessStream(stream, 3, 2, params);
    int64_t n = 0;
    for (const Prediction& p : run->outputs) n += p.has_value();
    return n;
  };
  const GateParams shared;
  const int64_t overall =
      answered(DisparityVariant::kToOverall, shared.rho_fair, shared.min_count);
  const int64_t no_double = answered(DisparityVariant::kToOverallNoDoubleCount,
                                     shared.rho_fair, shared.min_count);
  const int64_t between = answered(DisparityVariant::kBetweenGroups,
                                   shared.rho_fair, shared.min_count);
  if (!(overall >= no_double && no_double >= between)) {
    out.Fail(absl::StrFormat("to_overall %d, no_double_count %d, "
                             "between_groups %d",
                             overall, no_double, between));
  }
  for (double rho : {0.02, 0.05, 0.1, 0.2}) {
    out.notes.push_back(absl::StrFormat(
        "info rho=%g M=%d: to_overall %d, no_double_count %d, between %d", rho,
        shared.min_count,
        answered(DisparityVariant::kToOverall, rho, shared.min_count),
        answered(DisparityVariant::kToOverallNoDoubleCount, rho,
                 shared.min_count),
        answered(DisparityVariant::kBetweenGroups, rho, shared.min_count)));
  }
  if (out.pass) {
    out.detail = absl::StrFormat(
        "rho=%g M=%d: to_overall %d >= no_double_count %d >= between %d",
        shared.rho_fair, shared.min_count, overall, no_double, between);
  }
  return out;
}

int Main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> checks = {
      {"accounting identities", AccountingIdentities},
      {"noisy-argmax misprediction bound", NoisyArgmaxBound},
      {"data-dependent RDP dominance", DataDependentDominance},
      {"offline pre-processor group privacy", OfflineGroupPrivacy},
      {"fairness gate replay", GateSoundness},
      {"reduction ladder", ReductionLadder},
      {"gradient checks", GradientChecks},
      {"pareto oracle", ParetoOracle},
      {"coverage/accuracy trend", TrendGrid},
      {"aggregator vs pre-processing placement", PlacementComparison},
      {"disparity variant ordering", VariantOrdering},
  };
  int failures = 0;
  for (size_t i = 0; i < checks.size(); ++i) {
    const Outcome o = checks[i].second();
    std::printf("[%s] %zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1,
                checks[i].first.c_str(), o.detail.c_str());
    for (const std::string& note : o.notes) std::printf("       %s\n", note.c_str());
    std::fflush(stdout);
    failures += !o.pass;
  }
  std::printf("%d/%zu criteria passed\n",
              static_cast<int>(checks.size()) - failures, checks.size());
  return failures == 0 ? 0 : 1;
}

}  // namespace
}  // namespace fairfrontier

int main() { return fairfrontier::Main(); }
