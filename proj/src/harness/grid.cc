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

#include "fairfrontier/harness/grid.h"

#include <atomic>
#include <functional>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>

#include "fairfrontier/core/rng.h"
#include "fairfrontier/core/status_macros.h"

namespace fairfrontier {
namespace {

constexpr uint64_t kDataTag = 101;
constexpr uint64_t kTeacherTag = 102;
constexpr uint64_t kRunTag = 103;

// Calls fn(i) for i in [0, n) on up to `jobs` threads; returns the first
// error by index.
absl::Status ParallelFor(size_t n, int jobs,
                         const std::function<absl::Status(size_t)>& fn) {
  std::vector<absl::Status> status(n);
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i = next++; i < n; i = next++) status[i] = fn(i);
  };
  const size_t threads =
      std::min(n, static_cast<size_t>(std::max(1, jobs)));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  for (const absl::Status& s : status) FF_RETURN_IF_ERROR(s);
  return absl::OkStatus();
}

}  // namespace

absl::Status GridSpec::Validate() const {
  if (eps_values.empty() || fairness_values.empty() || seeds.empty()) {
    return absl::InvalidArgumentError(
        "eps_values, fairness_values and seeds must be nonempty");
  }
  for (double e : eps_values) {
    if (!(e > 0.0)) return absl::InvalidArgumentError("eps values must be > 0");
  }
  for (double f : fairness_values) {
    if (!(f >= 0.0)) {
      return absl::InvalidArgumentError("fairness values must be >= 0");
    }
    if (framework != Framework::kFairDpSgd && f > 1.0) {
      return absl::InvalidArgumentError("gamma values must lie in [0, 1]");
    }
  }
  return data.Validate();
}

std::vector<ExperimentRecord> GridResult::Records() const {
  std::vector<ExperimentRecord> out;
  out.reserve(cells.size());
  for (const GridCellResult& c : cells) out.push_back(c.record);
  return out;
}

SyntheticSpec ReplicaDataSpec(const GridSpec& spec, uint64_t master_seed,
                              uint64_t replica_seed) {
  SyntheticSpec data = spec.data;
  data.seed = DeriveSeed(master_seed, {kDataTag, spec.data.seed, replica_seed});
  return data;
}

absl::StatusOr<GridResult> RunGrid(const GridSpec& spec, uint64_t master_seed,
                                   int jobs) {
  FF_RETURN_IF_ERROR(spec.Validate());
  const size_t replicas = spec.seeds.size();
  const bool pate = spec.framework != Framework::kFairDpSgd;

  std::vector<std::optional<DatasetSplits>> splits(replicas);
  std::vector<std::optional<PateSetup>> setups(replicas);
  FF_RETURN_IF_ERROR(ParallelFor(replicas, jobs, [&](size_t r) -> absl::Status {
    FF_ASSIGN_OR_RETURN(
        DatasetSplits s,
        Generate(ReplicaDataSpec(spec, master_seed, spec.seeds[r])));
    if (!pate) {
      splits[r] = std::move(s);
      return absl::OkStatus();
    }
    FF_ASSIGN_OR_RETURN(
        PateSetup setup,
        PreparePate(std::move(s), spec.teachers,
                    DeriveSeed(master_seed, {kTeacherTag, spec.seeds[r]})));
    setups[r] = std::move(setup);
    return absl::OkStatus();
  }));

  const size_t n_eps = spec.eps_values.size();
  const size_t n_fair = spec.fairness_values.size();
  GridResult result;
  result.cells.resize(spec.CellCount());
  FF_RETURN_IF_ERROR(
      ParallelFor(result.cells.size(), jobs, [&](size_t i) -> absl::Status {
        const size_t r = i / (n_eps * n_fair);
        const double eps = spec.eps_values[(i / n_fair) % n_eps];
        const double fairness = spec.fairness_values[i % n_fair];
        const uint64_t run_seed =
            DeriveSeed(master_seed, {kRunTag, spec.seeds[r]});
        GridCellResult& cell = result.cells[i];
        cell.index = i;
        if (!pate) {
          FF_ASSIGN_OR_RETURN(
              DpSgdRun run,
              RunFairDpSgd(*splits[r], spec.dpsgd, eps, fairness, run_seed));
          cell.record = std::move(run.record);
          cell.inference_trace = std::move(run.inference_trace);
          cell.inference_gate = spec.dpsgd.postprocessor;
        } else {
          const Placement placement =
              spec.framework == Framework::kFairPate ? Placement::kFairAggregator
              : spec.framework == Framework::kPatePre
                  ? Placement::kPreProcessing
                  : Placement::kInProcessing;
          FF_ASSIGN_OR_RETURN(PateRun run,
                              RunPate(*setups[r], spec.pate, placement, eps,
                                      fairness, run_seed));
          cell.record = std::move(run.record);
          std::ostringstream ledger;
          run.tracker->WriteLedgerCsv(ledger);
          cell.ledger_csv = ledger.str();
          cell.aggregation_trace = std::move(run.aggregation_trace);
          cell.inference_trace = std::move(run.inference_trace);
          cell.aggregation_gate = run.aggregation_gate;
          cell.inference_gate = run.aggregation_gate;
        }
        cell.record.seed = spec.seeds[r];
        return absl::OkStatus();
      }));
  return result;
}

}  // namespace fairfrontier
