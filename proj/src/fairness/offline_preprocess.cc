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

#include "fairfrontier/fairness/offline_preprocess.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>

#include "absl/strings/str_format.h"

namespace fairfrontier {

bool LexicographicBefore(const LabeledExample& a, const LabeledExample& b) {
  if (a.features != b.features) {
    return std::lexicographical_compare(a.features.begin(), a.features.end(),
                                        b.features.begin(), b.features.end());
  }
  if (a.group != b.group) return a.group < b.group;
  return a.label < b.label;
}

int64_t MajorityCap(int64_t minority_size, double gamma) {
  // Tiny slack so that exact products like 2 * 0.5 * 4 / 0.5 do not floor one
  // short.
  const double extra = 2.0 * gamma * static_cast<double>(minority_size) /
                       (1.0 - gamma);
  return minority_size + static_cast<int64_t>(std::floor(extra + 1e-9));
}

absl::StatusOr<std::vector<size_t>> OrderedOfflinePreprocess(
    std::span<const LabeledExample> data, double gamma,
    const ExampleOrder& order) {
  if (!(gamma >= 0.0 && gamma < 1.0)) {
    return absl::InvalidArgumentError("gamma must lie in [0, 1)");
  }
  // label -> per-group index lists
  std::map<ClassId, std::array<std::vector<size_t>, 2>> by_label;
  for (size_t i = 0; i < data.size(); ++i) {
    if (data[i].group != 0 && data[i].group != 1) {
      return absl::InvalidArgumentError(absl::StrFormat(
          "offline pre-processing needs exactly two groups; example %d has "
          "group %d",
          i, data[i].group));
    }
    by_label[data[i].label][data[i].group].push_back(i);
  }

  std::vector<size_t> kept;
  kept.reserve(data.size());
  for (auto& [label, groups] : by_label) {
    const int majority = groups[0].size() >= groups[1].size() ? 0 : 1;
    const int64_t minority_size =
        static_cast<int64_t>(groups[1 - majority].size());
    const size_t cap = static_cast<size_t>(MajorityCap(minority_size, gamma));
    kept.insert(kept.end(), groups[1 - majority].begin(),
                groups[1 - majority].end());
    std::vector<size_t>& major = groups[majority];
    if (major.size() > cap) {
      std::stable_sort(major.begin(), major.end(), [&](size_t a, size_t b) {
        return order(data[a], data[b]);
      });
      major.resize(cap);
    }
    kept.insert(kept.end(), major.begin(), major.end());
  }
  std::sort(kept.begin(), kept.end());
  return kept;
}

}  // namespace fairfrontier
