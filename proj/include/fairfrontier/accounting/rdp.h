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

#ifndef FAIRFRONTIER_ACCOUNTING_RDP_H_
#define FAIRFRONTIER_ACCOUNTING_RDP_H_

#include <span>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "fairfrontier/core/types.h"

namespace fairfrontier {

// Integers 2..64 followed by 128 and 256.
std::vector<double> DefaultOrders();

// Renyi-DP bound per order, in nats.
class RdpCurve {
 public:
  RdpCurve() = default;
  // All-zero curve on the given orders.
  explicit RdpCurve(std::vector<double> orders);
  static absl::StatusOr<RdpCurve> Create(std::vector<double> orders,
                                         std::vector<double> values);

  std::span<const double> orders() const { return orders_; }
  std::span<const double> values() const { return values_; }
  size_t size() const { return orders_.size(); }
  bool empty() const { return orders_.empty(); }

  // Pointwise addition; the order grids must match.
  absl::Status Add(const RdpCurve& other);
  RdpCurve Scaled(double factor) const;

  friend bool operator==(const RdpCurve&, const RdpCurve&) = default;

 private:
  std::vector<double> orders_;
  std::vector<double> values_;
};

// order * sensitivity^2 / (2 sigma^2); +inf when sigma == 0.
double GaussianRdp(double sigma, double sensitivity, double order);

// order / (2 sigma1^2): Gaussian mechanism on the max count, sensitivity 1.
double ThresholdCheckRdp(double sigma1, double order);

// min(1, 1/2 sum_{i != i*} erfc((n_{i*} - n_i) / (2 sigma2))), i* the
// plurality class. erfc is std::erfc.
double QTilde(const VoteHistogram& hist, double sigma2);

// log of QTilde, accurate when the bound underflows a double.
double LogQTilde(const VoteHistogram& hist, double sigma2);

struct DataDependentRdpResult {
  double value = 0.0;
  // The data-dependent bound was not applicable at this order or q; value is
  // the data-independent order / sigma2^2.
  bool fell_back = false;
};

// Data-dependent RDP bound of the Gaussian noisy argmax at one order, given
// log q with q an upper bound on P[noisy argmax != plurality]. The auxiliary
// orders are mu2 = sigma2 sqrt(-log q), mu1 = mu2 + 1. Capped by the
// data-independent order / sigma2^2.
DataDependentRdpResult DataDependentRdp(double log_q, double sigma2,
                                        double order);

// Convenience: DataDependentRdp(log(q), ...). q in [0, 1].
DataDependentRdpResult DataDependentRdpFromQ(double q, double sigma2,
                                             double order);

// Data-independent and data-dependent argmax curves.
RdpCurve GnmaxRdpCurve(double sigma2, std::span<const double> orders);
RdpCurve DataDependentRdpCurve(double log_q, double sigma2,
                               std::span<const double> orders);
RdpCurve ThresholdCheckRdpCurve(double sigma1, std::span<const double> orders);

// Per-step RDP of the Poisson-subsampled Gaussian mechanism (sensitivity 1,
// noise multiplier sigma) at an integer order >= 2, by the binomial expansion
//   1/(order-1) log sum_k C(order,k) (1-q)^{order-k} q^k e^{(k^2-k)/(2 sigma^2)}.
absl::StatusOr<double> SubsampledGaussianRdp(double q, double sigma,
                                             double order);
absl::StatusOr<RdpCurve> SubsampledGaussianRdpCurve(
    double q, double sigma, std::span<const double> orders);

// min over orders of value + log(1/delta) / (order - 1).
absl::StatusOr<double> RdpToDp(const RdpCurve& curve, double delta);

}  // namespace fairfrontier

#endif  // FAIRFRONTIER_ACCOUNTING_RDP_H_
