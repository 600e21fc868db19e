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

#ifndef FAIRFRONTIER_ACCOUNTING_BUDGET_TRACKER_H_
#define FAIRFRONTIER_ACCOUNTING_BUDGET_TRACKER_H_

#include <cstdint>
#include <optional>
#include <ostream>
#include <vector>

#include "absl/status/statusor.h"
#include "fairfrontier/accounting/rdp.h"
#include "fairfrontier/aggregation/gnmax.h"
#include "fairfrontier/core/types.h"

namespace fairfrontier {

struct BudgetTrackerOptions {
  PrivacyBudget target{.epsilon = 1.0, .delta = 1e-5};
  // Charge the argmax cost of queries the fairness gate rejected after the
  // noisy argmax was computed.
  bool charge_fairness_rejected = true;
  // Use the data-dependent argmax bound (capped by the data-independent one).
  bool data_dependent = true;
  std::vector<double> orders = DefaultOrders();
};

enum class ChargeResult { kContinue, kExhausted };

struct LedgerEntry {
  int64_t query_index = 0;
  GroupId group = 0;
  std::optional<ClassId> label;
  bool answered = false;
  RejectedBy rejected_by = RejectedBy::kNone;
  std::optional<double> gate_condition;
  std::vector<double> cost;  // per order
  double running_epsilon = 0.0;
};

// Running RDP ledger for one aggregation run. Not thread-safe; one instance
// per run, charged in query order.
class BudgetTracker {
 public:
  static absl::StatusOr<BudgetTracker> Create(BudgetTrackerOptions options);

  const BudgetTrackerOptions& options() const { return options_; }
  const RdpCurve& accumulated() const { return accumulated_; }
  const std::vector<LedgerEntry>& ledger() const { return ledger_; }
  int64_t queries_charged() const { return static_cast<int64_t>(ledger_.size()); }

  // epsilon of the accumulated curve at the target delta.
  double CurrentEpsilon() const { return current_epsilon_; }

  // Cost a query would incur if its noisy argmax is computed (threshold plus
  // argmax). This is the most a query on `hist` can cost.
  RdpCurve MaxQueryCost(const VoteHistogram& hist,
                        const AggregatorParams& params) const;
  // Cost actually incurred by `outcome`.
  RdpCurve QueryCost(const AggregationOutcome& outcome,
                     const VoteHistogram& hist,
                     const AggregatorParams& params) const;

  // True if charging MaxQueryCost keeps epsilon within the target.
  bool CanAfford(const VoteHistogram& hist,
                 const AggregatorParams& params) const;

  ChargeResult ChargeQuery(const AggregationOutcome& outcome,
                           const VoteHistogram& hist,
                           const AggregatorParams& params, GroupId group = 0);

  // Columns: query_index, group, label, answered, rejected_by, gate_condition,
  // rdp_<order> per order, running_eps.
  void WriteLedgerCsv(std::ostream& out) const;

 private:
  explicit BudgetTracker(BudgetTrackerOptions options);
  double EpsilonOf(const RdpCurve& curve) const;

  BudgetTrackerOptions options_;
  RdpCurve accumulated_;
  double current_epsilon_ = 0.0;
  std::vector<LedgerEntry> ledger_;
};

}  // namespace fairfrontier

#endif  // FAIRFRONTIER_ACCOUNTING_BUDGET_TRACKER_H_
