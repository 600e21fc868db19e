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
#include <vector>

#include "fairfrontier/core/rng.h"
#include "fairfrontier/pareto/pareto.h"
#include "gtest/gtest.h"

namespace fairfrontier {
namespace {

ExperimentRecord Rec(double eps, double gamma, double acc, double cov = 0.5) {
  ExperimentRecord r;
  r.eps_achieved = eps;
  r.max_disparity = gamma;
  r.accuracy = acc;
  r.coverage = cov;
  return r;
}

// Dominance written out field by field for the default objectives.
bool OracleDominates(const ExperimentRecord& a, const ExperimentRecord& b) {
  const bool no_worse = a.eps_achieved <= b.eps_achieved &&
                        a.max_disparity <= b.max_disparity &&
                        a.accuracy >= b.accuracy && a.coverage >= b.coverage;
  const bool better = a.eps_achieved < b.eps_achieved ||
                      a.max_disparity < b.max_disparity ||
                      a.accuracy > b.accuracy || a.coverage > b.coverage;
  return no_worse && better;
}

std::vector<size_t> OracleFrontier(const std::vector<ExperimentRecord>& records) {
  std::vector<size_t> out;
  for (size_t i = 0; i < records.size(); ++i) {
    bool dominated = false;
    for (size_t j = 0; j < records.size() && !dominated; ++j) {
      dominated = OracleDominates(records[j], records[i]);
    }
    if (!dominated) out.push_back(i);
  }
  return out;
}

std::vector<ExperimentRecord> RandomRecords(SeededRng& rng, size_t n) {
  std::vector<ExperimentRecord> out;
  for (size_t i = 0; i < n; ++i) {
    // Coarse grids force ties.
    out.push_back(Rec(rng.UniformIndex(10) / 2.0, rng.UniformIndex(10) / 20.0,
                      rng.UniformIndex(20) / 20.0, rng.UniformIndex(20) / 20.0));
  }
  return out;
}

TEST(DominatesTest, Examples) {
  const ObjectiveSpec spec = ObjectiveSpec::Default();
  EXPECT_FALSE(Dominates(Rec(1, 0.1, 0.8), Rec(1, 0.1, 0.8), spec));
  EXPECT_TRUE(Dominates(Rec(1, 0.1, 0.8), Rec(1, 0.1, 0.75), spec));
  EXPECT_FALSE(Dominates(Rec(1, 0.1, 0.75), Rec(1, 0.1, 0.8), spec));
  EXPECT_FALSE(Dominates(Rec(1, 0.1, 0.8), Rec(2, 0.1, 0.9), spec));
  EXPECT_FALSE(Dominates(Rec(2, 0.1, 0.9), Rec(1, 0.1, 0.8), spec));
}

TEST(FrontierTest, ChainCollapsesToOne) {
  std::vector<ExperimentRecord> chain;
  for (int i = 0; i < 10; ++i) chain.push_back(Rec(1.0 + i, 0.1, 0.9 - 0.01 * i));
  const std::vector<size_t> idx = FrontierIndices(chain, ObjectiveSpec::Default());
  EXPECT_EQ(idx, std::vector<size_t>{0});
}

TEST(FrontierTest, EmptyInput) {
  EXPECT_TRUE(Frontier({}, ObjectiveSpec::Default()).empty());
}

TEST(FrontierTest, MatchesBruteForceAndIsIdempotent) {
  SeededRng rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    const size_t n = 1 + rng.UniformIndex(1000);
    const std::vector<ExperimentRecord> records = RandomRecords(rng, n);
    const std::vector<size_t> idx =
        FrontierIndices(records, ObjectiveSpec::Default());
    EXPECT_EQ(idx, OracleFrontier(records)) << "trial " << trial;
    const std::vector<ExperimentRecord> front =
        Frontier(records, ObjectiveSpec::Default());
    EXPECT_EQ(Frontier(front, ObjectiveSpec::Default()), front);
  }
}

TEST(FrontierTest, DuplicatesAreKept) {
  std::vector<ExperimentRecord> r = {Rec(1, 0.1, 0.8), Rec(1, 0.1, 0.8)};
  EXPECT_EQ(Frontier(r, ObjectiveSpec::Default()).size(), 2u);
}

TEST(ObjectiveSpecTest, CustomObjectives) {
  absl::StatusOr<ObjectiveSpec> spec = ObjectiveSpec::Create(
      {{"eps_achieved", Direction::kMinimize}, {"accuracy", Direction::kMaximize}});
  ASSERT_TRUE(spec.ok());
  // Disparity no longer matters.
  EXPECT_TRUE(Dominates(Rec(1, 0.9, 0.8), Rec(1, 0.1, 0.7), *spec));
  EXPECT_FALSE(ObjectiveSpec::Create({}).ok());
  EXPECT_FALSE(ObjectiveSpec::Create({{"latency", Direction::kMinimize}}).ok());
}

TEST(RecordFieldTest, Lookup) {
  ExperimentRecord r = Rec(1.5, 0.2, 0.7, 0.4);
  r.eps_spec = 2.0;
  r.fairness_spec = 0.05;
  EXPECT_EQ(*RecordField(r, "eps_spec"), 2.0);
  EXPECT_EQ(*RecordField(r, "fairness_spec"), 0.05);
  EXPECT_EQ(*RecordField(r, "coverage"), 0.4);
  EXPECT_FALSE(RecordField(r, "seed").ok());
}

TEST(FrontierQueryTest, LooseAndTightConstraints) {
  std::vector<ExperimentRecord> r = {Rec(1, 0.01, 0.8, 0.3), Rec(2, 0.05, 0.85, 0.6),
                                     Rec(3, 0.1, 0.9, 0.8)};
  std::optional<ExperimentRecord> best =
      FrontierQuery(r, {.max_eps = 100, .max_gamma = 1}, QueryObjective::kCoverage);
  ASSERT_TRUE(best.has_value());
  EXPECT_EQ(best->coverage, 0.8);
  EXPECT_FALSE(FrontierQuery(r, {.max_eps = 0.5, .max_gamma = 1},
                             QueryObjective::kAccuracy)
                   .has_value());
  best = FrontierQuery(r, {.max_eps = 3, .max_gamma = 0.05}, QueryObjective::kAccuracy);
  EXPECT_EQ(best->accuracy, 0.85);
}

TEST(FrontierQueryTest, TiesPreferLowerEpsThenDisparityThenOrder) {
  std::vector<ExperimentRecord> r = {Rec(2, 0.05, 0.8, 0.5), Rec(1, 0.05, 0.7, 0.5),
                                     Rec(1, 0.02, 0.6, 0.5), Rec(1, 0.02, 0.9, 0.5)};
  std::optional<ExperimentRecord> best =
      FrontierQuery(r, {.max_eps = 5, .max_gamma = 1}, QueryObjective::kCoverage);
  EXPECT_EQ(best->accuracy, 0.6);
}

TEST(FrontierQueryTest, RelaxingGammaNeverLowersCoverage) {
  SeededRng rng(5);
  const std::vector<ExperimentRecord> records = RandomRecords(rng, 300);
  for (double eps : {1.0, 2.5, 4.5}) {
    double prev = -1.0;
    for (double gamma = 0.0; gamma <= 0.5; gamma += 0.01) {
      std::optional<ExperimentRecord> best = FrontierQuery(
          records, {.max_eps = eps, .max_gamma = gamma}, QueryObjective::kCoverage);
      if (!best.has_value()) continue;
      EXPECT_GE(best->coverage, prev);
      prev = best->coverage;
    }
  }
}

TEST(QueryObjectiveTest, Parse) {
  EXPECT_EQ(*ParseQueryObjective("coverage"), QueryObjective::kCoverage);
  EXPECT_EQ(*ParseQueryObjective("accuracy"), QueryObjective::kAccuracy);
  EXPECT_FALSE(ParseQueryObjective("fairness").ok());
}

TEST(RoundingTest, SixDecimalsWithoutNegativeZero) {
  EXPECT_EQ(Round6(0.1234564), 0.123456);
  EXPECT_EQ(Round6(0.1234566), 0.123457);
  EXPECT_FALSE(std::signbit(Round6(-1e-9)));
  ExperimentRecord r = Rec(1.00000049, 0.0, 0.5);
  r.extra["inference_coverage"] = 0.33333333;
  const ExperimentRecord rounded = RoundRecord(r);
  EXPECT_EQ(rounded.eps_achieved, 1.0);
  EXPECT_EQ(rounded.extra.at("inference_coverage"), 0.333333);
}

}  // namespace
}  // namespace fairfrontier
