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

#include "fairfrontier/accounting/rdp.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "absl/strings/str_format.h"

namespace fairfrontier {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// log(1 - e^x) for x <= 0.
double Log1mExp(double x) {
  if (x >= 0.0) return -kInf;
  if (x < -std::numbers::ln2) return std::log1p(-std::exp(x));
  return std::log(-std::expm1(x));
}

double LogAddExp(double a, double b) {
  if (a == -kInf) return b;
  if (b == -kInf) return a;
  const double hi = std::max(a, b);
  return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

// log(erfc(x)) that stays finite far into the tail.
double LogErfc(double x) {
  if (x < 25.0) return std::log(std::erfc(x));
  const double x2 = x * x;
  // Asymptotic series, three terms; relative error below 1e-8 for x >= 25.
  return -x2 - std::log(x * std::sqrt(std::numbers::pi)) +
         std::log1p(-0.5 / x2 + 0.75 / (x2 * x2));
}

}  // namespace

std::vector<double> DefaultOrders() {
  std::vector<double> orders;
  for (int a = 2; a <= 64; ++a) orders.push_back(a);
  orders.push_back(128);
  orders.push_back(256);
  return orders;
}

RdpCurve::RdpCurve(std::vector<double> orders)
    : orders_(std::move(orders)), values_(orders_.size(), 0.0) {}

absl::StatusOr<RdpCurve> RdpCurve::Create(std::vector<double> orders,
                                          std::vector<double> values) {
  if (orders.size() != values.size()) {
    return absl::InvalidArgumentError("orders and values differ in length");
  }
  for (size_t i = 0; i < orders.size(); ++i) {
    if (!(orders[i] > 1.0) || (i > 0 && !(orders[i] > orders[i - 1]))) {
      return absl::InvalidArgumentError(
          "orders must be strictly ascending and > 1");
    }
    if (!(values[i] >= 0.0)) {
      return absl::InvalidArgumentError("RDP values must be nonnegative");
    }
  }
  RdpCurve curve;
  curve.orders_ = std::move(orders);
  curve.values_ = std::move(values);
  return curve;
}

absl::Status RdpCurve::Add(const RdpCurve& other) {
  if (other.orders_ != orders_) {
    return absl::InvalidArgumentError("cannot add RDP curves on different orders");
  }
  for (size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
  return absl::OkStatus();
}

RdpCurve RdpCurve::Scaled(double factor) const {
  RdpCurve out = *this;
  for (double& v : out.values_) v *= factor;
  return out;
}

double GaussianRdp(double sigma, double sensitivity, double order) {
  if (sigma == 0.0) return kInf;
  return order * sensitivity * sensitivity / (2.0 * sigma * sigma);
}

double ThresholdCheckRdp(double sigma1, double order) {
  return GaussianRdp(sigma1, 1.0, order);
}

double LogQTilde(const VoteHistogram& hist, double sigma2) {
  const auto votes = hist.votes();
  const ClassId top = hist.Plurality();
  double log_sum = -kInf;
  for (ClassId i = 0; i < hist.num_classes(); ++i) {
    if (i == top) continue;
    const double gap = static_cast<double>(votes[top] - votes[i]);
    log_sum = LogAddExp(log_sum, LogErfc(gap / (2.0 * sigma2)));
  }
  return std::min(0.0, log_sum - std::numbers::ln2);
}

double QTilde(const VoteHistogram& hist, double sigma2) {
  return std::exp(LogQTilde(hist, sigma2));
}

DataDependentRdpResult DataDependentRdp(double log_q, double sigma2,
                                        double order) {
  const double variance = sigma2 * sigma2;
  const double cap = order / variance;
  if (log_q == -kInf) return {.value = 0.0};
  if (!(log_q < 0.0)) return {.value = cap, .fell_back = true};

  const double mu2 = std::sqrt(variance * -log_q);
  const double mu1 = mu2 + 1.0;
  const double eps1 = mu1 / variance;
  const double eps2 = mu2 / variance;
  const bool applicable =
      mu2 > 1.0 && order <= mu2 && -log_q > eps2 &&
      log_q <= (mu2 - 1.0) * eps2 -
                   mu2 * (std::log1p(1.0 / (mu1 - 1.0)) +
                          std::log1p(1.0 / (mu2 - 1.0)));
  if (!applicable) return {.value = cap, .fell_back = true};

  const double log1q = Log1mExp(log_q);
  const double log_a =
      (order - 1.0) * (log1q - Log1mExp((log_q + eps2) * (1.0 - 1.0 / mu2)));
  const double log_b = (order - 1.0) * (eps1 - log_q / (mu1 - 1.0));
  const double bound =
      LogAddExp(log1q + log_a, log_q + log_b) / (order - 1.0);
  if (!(bound < cap)) return {.value = cap, .fell_back = true};
  return {.value = std::max(0.0, bound)};
}

DataDependentRdpResult DataDependentRdpFromQ(double q, double sigma2,
                                             double order) {
  return DataDependentRdp(q <= 0.0 ? -kInf : std::log(std::min(q, 1.0)),
                          sigma2, order);
}

RdpCurve GnmaxRdpCurve(double sigma2, std::span<const double> orders) {
  std::vector<double> values;
  // Sensitivity^2 = 2, applied as an exact doubling.
  for (double a : orders) values.push_back(2.0 * GaussianRdp(sigma2, 1.0, a));
  return *RdpCurve::Create(std::vector<double>(orders.begin(), orders.end()),
                           std::move(values));
}

RdpCurve DataDependentRdpCurve(double log_q, double sigma2,
                               std::span<const double> orders) {
  std::vector<double> values;
  for (double a : orders) values.push_back(DataDependentRdp(log_q, sigma2, a).value);
  return *RdpCurve::Create(std::vector<double>(orders.begin(), orders.end()),
                           std::move(values));
}

RdpCurve ThresholdCheckRdpCurve(double sigma1, std::span<const double> orders) {
  std::vector<double> values;
  for (double a : orders) values.push_back(ThresholdCheckRdp(sigma1, a));
  return *RdpCurve::Create(std::vector<double>(orders.begin(), orders.end()),
                           std::move(values));
}

absl::StatusOr<double> SubsampledGaussianRdp(double q, double sigma,
                                             double order) {
  if (!(q > 0.0 && q <= 1.0)) {
    return absl::InvalidArgumentError("sampling rate must lie in (0, 1]");
  }
  if (!(sigma >= 0.0)) {
    return absl::InvalidArgumentError("noise multiplier must be >= 0");
  }
  if (order < 2.0 || order != std::floor(order)) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "subsampled Gaussian RDP needs an integer order >= 2, got %g", order));
  }
  if (sigma == 0.0) return kInf;
  if (q == 1.0) return order / (2.0 * sigma * sigma);

  const int n = static_cast<int>(order);
  const double log_q = std::log(q);
  const double log_1mq = std::log1p(-q);
  double log_sum = -kInf;
  for (int k = 0; k <= n; ++k) {
    const double log_binom =
        std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
    const double term = log_binom + (n - k) * log_1mq + k * log_q +
                        (static_cast<double>(k) * k - k) / (2.0 * sigma * sigma);
    log_sum = LogAddExp(log_sum, term);
  }
  return std::max(0.0, log_sum / (order - 1.0));
}

absl::StatusOr<RdpCurve> SubsampledGaussianRdpCurve(
    double q, double sigma, std::span<const double> orders) {
  std::vector<double> values;
  for (double a : orders) {
    absl::StatusOr<double> v = SubsampledGaussianRdp(q, sigma, a);
    if (!v.ok()) return v.status();
    values.push_back(*v);
  }
  return RdpCurve::Create(std::vector<double>(orders.begin(), orders.end()),
                          std::move(values));
}

absl::StatusOr<double> RdpToDp(const RdpCurve& curve, double delta) {
  if (curve.empty()) return absl::InvalidArgumentError("empty RDP curve");
  if (!(delta > 0.0 && delta < 1.0)) {
    return absl::InvalidArgumentError("delta must lie in (0, 1)");
  }
  const double log_inv_delta = -std::log(delta);
  double best = kInf;
  for (size_t i = 0; i < curve.size(); ++i) {
    best = std::min(best, curve.values()[i] +
                              log_inv_delta / (curve.orders()[i] - 1.0));
  }
  return best;
}

}  // namespace fairfrontier
