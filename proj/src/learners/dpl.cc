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

#include "fairfrontier/learners/dpl.h"

#include <cmath>
#include <optional>

#include "absl/strings/str_format.h"

namespace fairfrontier {
namespace {

// One maximizing entry: disparity of group z on class k, compared against
// group `other` (kBetweenGroups only) with sign `sign` from the reduction.
struct ActiveEntry {
  GroupId z = 0;
  ClassId k = 0;
  GroupId other = -1;
  double sign = 1.0;
};

struct SoftState {
  std::vector<std::vector<double>> probs;  // per example
  std::vector<int64_t> group_size;
  // sums[z][k] = sum of probs[i][k] over examples of group z
  std::vector<std::vector<double>> sums;
  int64_t total = 0;
};

absl::StatusOr<SoftState> ComputeSoftState(
    const Model& model, std::span<const LabeledExample> public_set,
    int num_groups, double temperature) {
  const int num_classes = model.num_classes();
  SoftState s;
  s.group_size.assign(num_groups, 0);
  s.sums.assign(num_groups, std::vector<double>(num_classes, 0.0));
  s.probs.reserve(public_set.size());
  for (size_t i = 0; i < public_set.size(); ++i) {
    const LabeledExample& ex = public_set[i];
    if (ex.group < 0 || ex.group >= num_groups) {
      return absl::InvalidArgumentError(absl::StrFormat(
          "public example %d has group %d outside [0, %d)", i, ex.group,
          num_groups));
    }
    if (static_cast<int>(ex.features.size()) != model.dim()) {
      return absl::InvalidArgumentError(absl::StrFormat(
          "public example %d has dimension %d, model expects %d", i,
          ex.features.size(), model.dim()));
    }
    s.probs.push_back(Softmax(model.Logits(ex.features), temperature));
    ++s.group_size[ex.group];
    for (int k = 0; k < num_classes; ++k) s.sums[ex.group][k] += s.probs.back()[k];
  }
  s.total = static_cast<int64_t>(public_set.size());
  return s;
}

struct Candidate {
  double value;
  GroupId other;
};

// Disparity entry (z, k) of the soft rates, or nullopt if undefined.
std::optional<Candidate> Entry(const SoftState& s, GroupId z, ClassId k,
                               DisparityVariant variant) {
  const int num_groups = static_cast<int>(s.group_size.size());
  if (s.group_size[z] == 0) return std::nullopt;
  const double r_z = s.sums[z][k] / static_cast<double>(s.group_size[z]);
  switch (variant) {
    case DisparityVariant::kToOverallNoDoubleCount: {
      const int64_t rest = s.total - s.group_size[z];
      if (rest == 0) return std::nullopt;
      double rest_sum = 0.0;
      for (GroupId g = 0; g < num_groups; ++g) {
        if (g != z) rest_sum += s.sums[g][k];
      }
      return Candidate{r_z - rest_sum / static_cast<double>(rest), -1};
    }
    case DisparityVariant::kToOverall: {
      double all = 0.0;
      for (GroupId g = 0; g < num_groups; ++g) all += s.sums[g][k];
      return Candidate{r_z - all / static_cast<double>(s.total), -1};
    }
    case DisparityVariant::kBetweenGroups: {
      std::optional<Candidate> best;
      for (GroupId g = 0; g < num_groups; ++g) {
        if (g == z || s.group_size[g] == 0) continue;
        const double gap =
            std::abs(r_z - s.sums[g][k] / static_cast<double>(s.group_size[g]));
        if (!best.has_value() || gap > best->value) best = Candidate{gap, g};
      }
      return best;
    }
  }
  return std::nullopt;
}

struct Reduced {
  double loss = 0.0;
  std::vector<ActiveEntry> active;
};

absl::StatusOr<Reduced> Reduce(const SoftState& s, int num_classes,
                               const DplOptions& options) {
  const int num_groups = static_cast<int>(s.group_size.size());
  std::optional<double> best;
  std::vector<ActiveEntry> active;
  for (GroupId z = 0; z < num_groups; ++z) {
    for (ClassId k = 0; k < num_classes; ++k) {
      const std::optional<Candidate> c = Entry(s, z, k, options.variant);
      if (!c.has_value()) continue;
      double value = c->value;
      double sign = 1.0;
      if (options.reduction == DisparityReduction::kAbsolute && value < 0.0) {
        value = -value;
        sign = -1.0;
      }
      if (!best.has_value() || value > *best) {
        best = value;
        active.clear();
      }
      if (value == *best) active.push_back({z, k, c->other, sign});
    }
  }
  if (!best.has_value()) {
    return absl::FailedPreconditionError(
        "demographic parity loss undefined: no group has a nonempty "
        "comparison population");
  }
  return Reduced{*best, std::move(active)};
}

}  // namespace

absl::StatusOr<double> DplLoss(const Model& model,
                               std::span<const LabeledExample> public_set,
                               int num_groups, const DplOptions& options) {
  if (!(options.temperature > 0.0)) {
    return absl::InvalidArgumentError("softmax temperature must be > 0");
  }
  absl::StatusOr<SoftState> s =
      ComputeSoftState(model, public_set, num_groups, options.temperature);
  if (!s.ok()) return s.status();
  absl::StatusOr<Reduced> r = Reduce(*s, model.num_classes(), options);
  if (!r.ok()) return r.status();
  return r->loss;
}

absl::StatusOr<DplResult> Dpl(const Model& model,
                              std::span<const LabeledExample> public_set,
                              int num_groups, const DplOptions& options) {
  if (!(options.temperature > 0.0)) {
    return absl::InvalidArgumentError("softmax temperature must be > 0");
  }
  absl::StatusOr<SoftState> s =
      ComputeSoftState(model, public_set, num_groups, options.temperature);
  if (!s.ok()) return s.status();
  absl::StatusOr<Reduced> r = Reduce(*s, model.num_classes(), options);
  if (!r.ok()) return r.status();

  const int num_classes = model.num_classes();
  const double inv_t = 1.0 / options.temperature;
  const double tie_weight = 1.0 / static_cast<double>(r->active.size());

  // Per-example weight c_i on d p_i[k] / d theta for each active entry.
  DplResult result{.loss = r->loss,
                   .gradient = std::vector<double>(model.parameter_count())};
  std::vector<double> upstream(num_classes);
  for (const ActiveEntry& a : r->active) {
    const double n_z = static_cast<double>(s->group_size[a.z]);
    const double n_rest = static_cast<double>(s->total - s->group_size[a.z]);
    const double n_all = static_cast<double>(s->total);
    double bg_sign = 1.0;
    if (options.variant == DisparityVariant::kBetweenGroups) {
      const double r_z = s->sums[a.z][a.k] / n_z;
      const double r_o =
          s->sums[a.other][a.k] / static_cast<double>(s->group_size[a.other]);
      bg_sign = r_z >= r_o ? 1.0 : -1.0;
    }
    for (size_t i = 0; i < public_set.size(); ++i) {
      const GroupId g = public_set[i].group;
      double c = 0.0;
      switch (options.variant) {
        case DisparityVariant::kToOverallNoDoubleCount:
          c = g == a.z ? 1.0 / n_z : -1.0 / n_rest;
          break;
        case DisparityVariant::kToOverall:
          c = (g == a.z ? 1.0 / n_z : 0.0) - 1.0 / n_all;
          break;
        case DisparityVariant::kBetweenGroups:
          if (g == a.z) {
            c = bg_sign / n_z;
          } else if (g == a.other) {
            c = -bg_sign / static_cast<double>(s->group_size[a.other]);
          }
          break;
      }
      c *= a.sign * tie_weight;
      if (c == 0.0) continue;
      // d p[k] / d logit[j] = p[k] (delta_kj - p[j]) / T
      const std::vector<double>& p = s->probs[i];
      for (int j = 0; j < num_classes; ++j) {
        upstream[j] = -p[a.k] * p[j] * inv_t;
      }
      upstream[a.k] += p[a.k] * inv_t;
      model.AccumulateLogitVjp(public_set[i].features, upstream, c,
                               result.gradient);
    }
  }
  return result;
}

}  // namespace fairfrontier
