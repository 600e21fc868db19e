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

#include "fairfrontier/accounting/budget_tracker.h"

#include <cmath>
#include <limits>

#include "absl/strings/str_format.h"
#include "fairfrontier/core/status_macros.h"

namespace fairfrontier {

absl::StatusOr<BudgetTracker> BudgetTracker::Create(
    BudgetTrackerOptions options) {
  FF_RETURN_IF_ERROR(options.target.Validate());
  if (!(options.target.delta > 0.0 && options.target.delta < 1.0)) {
    return absl::InvalidArgumentError("target delta must lie in (0, 1)");
  }
  FF_RETURN_IF_ERROR(
      RdpCurve::Create(options.orders,
                       std::vector<double>(options.orders.size(), 0.0))
          .status());
  if (options.orders.empty()) {
    return absl::InvalidArgumentError("order grid is empty");
  }
  return BudgetTracker(std::move(options));
}

BudgetTracker::BudgetTracker(BudgetTrackerOptions options)
    : options_(std::move(options)), accumulated_(options_.orders) {}

double BudgetTracker::EpsilonOf(const RdpCurve& curve) const {
  return *RdpToDp(curve, options_.target.delta);
}

RdpCurve BudgetTracker::MaxQueryCost(const VoteHistogram& hist,
                                     const AggregatorParams& params) const {
  RdpCurve cost = ThresholdCheckRdpCurve(params.sigma1, options_.orders);
  const RdpCurve argmax =
      options_.data_dependent
          ? DataDependentRdpCurve(LogQTilde(hist, params.sigma2),
                                  params.sigma2, options_.orders)
          : GnmaxRdpCurve(params.sigma2, options_.orders);
  (void)cost.Add(argmax);
  return cost;
}

RdpCurve BudgetTracker::QueryCost(const AggregationOutcome& outcome,
                                  const VoteHistogram& hist,
                                  const AggregatorParams& params) const {
  const bool charge_argmax =
      outcome.noisy_argmax_computed &&
      (outcome.rejected_by != RejectedBy::kFairness ||
       options_.charge_fairness_rejected);
  if (charge_argmax) return MaxQueryCost(hist, params);
  return ThresholdCheckRdpCurve(params.sigma1, options_.orders);
}

bool BudgetTracker::CanAfford(const VoteHistogram& hist,
                              const AggregatorParams& params) const {
  RdpCurve next = accumulated_;
  (void)next.Add(MaxQueryCost(hist, params));
  return EpsilonOf(next) <= options_.target.epsilon;
}

ChargeResult BudgetTracker::ChargeQuery(const AggregationOutcome& outcome,
                                        const VoteHistogram& hist,
                                        const AggregatorParams& params,
                                        GroupId group) {
  const RdpCurve cost = QueryCost(outcome, hist, params);
  (void)accumulated_.Add(cost);
  current_epsilon_ = EpsilonOf(accumulated_);

  LedgerEntry entry;
  entry.query_index = static_cast<int64_t>(ledger_.size());
  entry.group = group;
  entry.label = outcome.noisy_argmax;
  entry.answered = outcome.answered();
  entry.rejected_by = outcome.rejected_by;
  if (outcome.gate.has_value()) entry.gate_condition = outcome.gate->condition;
  entry.cost.assign(cost.values().begin(), cost.values().end());
  entry.running_epsilon = current_epsilon_;
  ledger_.push_back(std::move(entry));

  return current_epsilon_ > options_.target.epsilon ? ChargeResult::kExhausted
                                                    : ChargeResult::kContinue;
}

void BudgetTracker::WriteLedgerCsv(std::ostream& out) const {
  out << "query_index,group,label,answered,rejected_by,gate_condition";
  for (double a : options_.orders) out << absl::StrFormat(",rdp_%g", a);
  out << ",running_eps\n";
  for (const LedgerEntry& e : ledger_) {
    out << e.query_index << ',' << e.group << ',';
    if (e.label.has_value()) out << *e.label;
    out << ',' << (e.answered ? 1 : 0) << ',' << RejectedByName(e.rejected_by)
        << ',';
    if (e.gate_condition.has_value()) {
      out << absl::StrFormat("%.17g", *e.gate_condition);
    }
    for (double c : e.cost) out << absl::StrFormat(",%.17g", c);
    out << absl::StrFormat(",%.17g\n", e.running_epsilon);
  }
}

}  // namespace fairfrontier
