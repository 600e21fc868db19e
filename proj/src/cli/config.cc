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

#include "fairfrontier/cli/config.h"

#include <functional>
#include <map>

#include <charconv>

#include "absl/strings/str_format.h"
#include "fairfrontier/core/status_macros.h"

namespace fairfrontier {
namespace {

using Setter = std::function<absl::Status(std::string_view, CliConfig&)>;

absl::Status BadValue(std::string_view what) {
  return absl::InvalidArgumentError(std::string(what));
}

std::string_view Strip(std::string_view s) {
  const char* kSpace = " \t\r\n";
  const size_t begin = s.find_first_not_of(kSpace);
  if (begin == std::string_view::npos) return {};
  return s.substr(begin, s.find_last_not_of(kSpace) - begin + 1);
}

std::vector<std::string_view> Split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  size_t start = 0;
  for (size_t pos = s.find(sep); pos != std::string_view::npos;
       pos = s.find(sep, start)) {
    parts.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
  parts.push_back(s.substr(start));
  return parts;
}

// Whole-string std::from_chars.
template <typename T>
bool FromChars(std::string_view s, T& out) {
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

absl::Status ParseInto(std::string_view s, double& out) {
  if (!FromChars(s, out)) return BadValue("expected a number");
  return absl::OkStatus();
}

absl::Status ParseInto(std::string_view s, int& out) {
  if (!FromChars(s, out)) return BadValue("expected an integer");
  return absl::OkStatus();
}

absl::Status ParseInto(std::string_view s, int64_t& out) {
  if (!FromChars(s, out)) return BadValue("expected an integer");
  return absl::OkStatus();
}

absl::Status ParseInto(std::string_view s, uint64_t& out) {
  if (!FromChars(s, out)) {
    return BadValue("expected a nonnegative integer");
  }
  return absl::OkStatus();
}

absl::Status ParseInto(std::string_view s, bool& out) {
  if (s == "true" || s == "1") {
    out = true;
  } else if (s == "false" || s == "0") {
    out = false;
  } else {
    return BadValue("expected true or false");
  }
  return absl::OkStatus();
}

template <typename T>
absl::Status ParseList(std::string_view s, std::vector<T>& out) {
  std::vector<T> values;
  for (std::string_view part : Split(s, ',')) {
    T v{};
    FF_RETURN_IF_ERROR(ParseInto(Strip(part), v));
    values.push_back(v);
  }
  out = std::move(values);
  return absl::OkStatus();
}

template <typename T>
absl::Status ParseTable(std::string_view s, std::vector<std::vector<T>>& out) {
  std::vector<std::vector<T>> rows;
  for (std::string_view row : Split(s, ';')) {
    std::vector<T> values;
    FF_RETURN_IF_ERROR(ParseList(row, values));
    rows.push_back(std::move(values));
  }
  out = std::move(rows);
  return absl::OkStatus();
}

template <typename T, typename Field>
Setter Scalar(Field field) {
  return [field](std::string_view v, CliConfig& c) {
    return ParseInto(v, field(c));
  };
}

#define FF_SCALAR(type, expr) \
  Scalar<type>([](CliConfig& c) -> type& { return expr; })

Setter ArchitectureSetter(std::function<ModelConfig&(CliConfig&)> field) {
  return [field](std::string_view v, CliConfig& c) -> absl::Status {
    FF_ASSIGN_OR_RETURN(field(c).architecture, ParseArchitecture(v));
    return absl::OkStatus();
  };
}

const std::map<std::string, Setter, std::less<>>& Setters() {
  static const auto* setters = new std::map<std::string, Setter, std::less<>>{
      // Grid.
      {"framework",
       [](std::string_view v, CliConfig& c) -> absl::Status {
         FF_ASSIGN_OR_RETURN(c.grid.framework, ParseFramework(v));
         return absl::OkStatus();
       }},
      {"eps_values",
       [](std::string_view v, CliConfig& c) {
         return ParseList(v, c.grid.eps_values);
       }},
      {"fairness_values",
       [](std::string_view v, CliConfig& c) {
         return ParseList(v, c.grid.fairness_values);
       }},
      {"seeds",
       [](std::string_view v, CliConfig& c) {
         return ParseList(v, c.grid.seeds);
       }},
      {"dataset",
       [](std::string_view v, CliConfig& c) {
         if (v.empty()) return BadValue("expected a name");
         c.grid.dataset = std::string(v);
         return absl::OkStatus();
       }},
      {"seed", FF_SCALAR(uint64_t, c.seed)},
      {"jobs", FF_SCALAR(int, c.jobs)},

      // Synthetic data.
      {"data.preset",
       [](std::string_view v, CliConfig& c) {
         if (v == "default") {
           c.grid.data = SyntheticSpec();
         } else if (v == "three_group") {
           c.grid.data = ThreeGroupSpec();
         } else {
           return BadValue("expected default or three_group");
         }
         return absl::OkStatus();
       }},
      {"data.dim", FF_SCALAR(int, c.grid.data.dim)},
      {"data.num_groups", FF_SCALAR(int, c.grid.data.num_groups)},
      {"data.num_classes", FF_SCALAR(int, c.grid.data.num_classes)},
      {"data.n", FF_SCALAR(int64_t, c.grid.data.n)},
      {"data.group_weights",
       [](std::string_view v, CliConfig& c) {
         return ParseList(v, c.grid.data.group_weights);
       }},
      {"data.group_class_weights",
       [](std::string_view v, CliConfig& c) {
         return ParseTable(v, c.grid.data.group_class_weights);
       }},
      {"data.exact_counts",
       [](std::string_view v, CliConfig& c) {
         if (v == "none") {
           c.grid.data.exact_counts.reset();
           return absl::OkStatus();
         }
         std::vector<std::vector<int64_t>> table;
         FF_RETURN_IF_ERROR(ParseTable(v, table));
         c.grid.data.exact_counts = std::move(table);
         return absl::OkStatus();
       }},
      {"data.class_separation", FF_SCALAR(double, c.grid.data.class_separation)},
      {"data.group_shift", FF_SCALAR(double, c.grid.data.group_shift)},
      {"data.noise_scale", FF_SCALAR(double, c.grid.data.noise_scale)},
      {"data.group_one_hot", FF_SCALAR(bool, c.grid.data.group_one_hot)},
      {"data.seed", FF_SCALAR(uint64_t, c.grid.data.seed)},
      {"data.train_fraction", FF_SCALAR(double, c.grid.data.train_fraction)},
      {"data.public_fraction", FF_SCALAR(double, c.grid.data.public_fraction)},

      // Teachers.
      {"teachers.count", FF_SCALAR(int, c.grid.teachers.num_teachers)},
      {"teachers.architecture",
       ArchitectureSetter([](CliConfig& c) -> ModelConfig& {
         return c.grid.teachers.model;
       })},
      {"teachers.hidden_width",
       FF_SCALAR(int, c.grid.teachers.model.hidden_width)},
      {"teachers.epochs", FF_SCALAR(int, c.grid.teachers.train.epochs)},
      {"teachers.batch_size", FF_SCALAR(int, c.grid.teachers.train.batch_size)},
      {"teachers.learning_rate",
       FF_SCALAR(double, c.grid.teachers.train.learning_rate)},
      {"teachers.l2", FF_SCALAR(double, c.grid.teachers.train.l2)},

      // Aggregator and gate.
      {"aggregator.threshold", FF_SCALAR(double, c.grid.pate.aggregator.threshold)},
      {"aggregator.sigma1", FF_SCALAR(double, c.grid.pate.aggregator.sigma1)},
      {"aggregator.sigma2", FF_SCALAR(double, c.grid.pate.aggregator.sigma2)},
      {"gate.min_count",
       [](std::string_view v, CliConfig& c) -> absl::Status {
         int64_t m = 0;
         FF_RETURN_IF_ERROR(ParseInto(v, m));
         c.grid.pate.aggregator.gate.min_count = m;
         c.grid.dpsgd.postprocessor.min_count = m;
         return absl::OkStatus();
       }},
      {"gate.variant",
       [](std::string_view v, CliConfig& c) -> absl::Status {
         FF_ASSIGN_OR_RETURN(DisparityVariant variant, ParseDisparityVariant(v));
         c.grid.pate.aggregator.gate.variant = variant;
         c.grid.dpsgd.postprocessor.variant = variant;
         return absl::OkStatus();
       }},
      // The PATE frameworks take rho_fair from fairness_values; this key sets
      // the FairDP-SGD post-processor.
      {"gate.rho_fair", FF_SCALAR(double, c.grid.dpsgd.postprocessor.rho_fair)},

      // PATE runs.
      {"pate.delta", FF_SCALAR(double, c.grid.pate.delta)},
      {"pate.max_queries", FF_SCALAR(int64_t, c.grid.pate.max_queries)},
      {"pate.charge_fairness_rejected",
       FF_SCALAR(bool, c.grid.pate.charge_fairness_rejected)},
      {"pate.data_dependent", FF_SCALAR(bool, c.grid.pate.data_dependent)},
      {"pate.use_postprocessor", FF_SCALAR(bool, c.grid.pate.use_postprocessor)},
      {"pate.student_dpl_weight", FF_SCALAR(double, c.grid.pate.student_dpl_weight)},
      {"student.architecture",
       ArchitectureSetter([](CliConfig& c) -> ModelConfig& {
         return c.grid.pate.student;
       })},
      {"student.hidden_width", FF_SCALAR(int, c.grid.pate.student.hidden_width)},
      {"student.epochs", FF_SCALAR(int, c.grid.pate.student_train.epochs)},
      {"student.batch_size", FF_SCALAR(int, c.grid.pate.student_train.batch_size)},
      {"student.learning_rate",
       FF_SCALAR(double, c.grid.pate.student_train.learning_rate)},
      {"student.l2", FF_SCALAR(double, c.grid.pate.student_train.l2)},

      // DP-SGD runs.
      {"dpsgd.learning_rate", FF_SCALAR(double, c.grid.dpsgd.dp.learning_rate)},
      {"dpsgd.expected_batch", FF_SCALAR(int64_t, c.grid.dpsgd.dp.expected_batch)},
      {"dpsgd.clip_norm", FF_SCALAR(double, c.grid.dpsgd.dp.clip_norm)},
      {"dpsgd.steps", FF_SCALAR(int64_t, c.grid.dpsgd.dp.steps)},
      {"dpsgd.delta", FF_SCALAR(double, c.grid.dpsgd.dp.delta)},
      {"dpsgd.architecture",
       ArchitectureSetter([](CliConfig& c) -> ModelConfig& {
         return c.grid.dpsgd.model;
       })},
      {"dpsgd.hidden_width", FF_SCALAR(int, c.grid.dpsgd.model.hidden_width)},
      {"dpsgd.init_stddev", FF_SCALAR(double, c.grid.dpsgd.init_stddev)},
      {"dpsgd.use_postprocessor", FF_SCALAR(bool, c.grid.dpsgd.use_postprocessor)},

      // DPL regularizer, shared by the in-processing student and FairDP-SGD.
      {"dpl.temperature",
       [](std::string_view v, CliConfig& c) -> absl::Status {
         double t = 0.0;
         FF_RETURN_IF_ERROR(ParseInto(v, t));
         c.grid.pate.student_dpl.temperature = t;
         c.grid.dpsgd.dpl.temperature = t;
         return absl::OkStatus();
       }},
      {"dpl.variant",
       [](std::string_view v, CliConfig& c) -> absl::Status {
         FF_ASSIGN_OR_RETURN(DisparityVariant variant, ParseDisparityVariant(v));
         c.grid.pate.student_dpl.variant = variant;
         c.grid.dpsgd.dpl.variant = variant;
         return absl::OkStatus();
       }},
  };
  return *setters;
}

#undef FF_SCALAR

}  // namespace

absl::Status ApplyConfigValue(std::string_view key, std::string_view value,
                              CliConfig& config) {
  const auto& setters = Setters();
  auto it = setters.find(key);
  if (it == setters.end()) {
    return absl::InvalidArgumentError(
        absl::StrFormat("unknown config key '%s'", std::string(key)));
  }
  absl::Status status = it->second(Strip(value), config);
  if (!status.ok()) {
    return absl::InvalidArgumentError(
        absl::StrFormat("config key '%s': %s", std::string(key),
                        std::string(status.message())));
  }
  return absl::OkStatus();
}

absl::Status ApplyConfigText(std::string_view text, CliConfig& config) {
  int line_no = 0;
  for (std::string_view line : Split(text, '\n')) {
    ++line_no;
    if (size_t hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = Strip(line);
    if (line.empty()) continue;
    const size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      return absl::InvalidArgumentError(
          absl::StrFormat("line %d: expected 'key = value'", line_no));
    }
    const std::string_view key = Strip(line.substr(0, eq));
    absl::Status status = ApplyConfigValue(key, line.substr(eq + 1), config);
    if (!status.ok()) {
      return absl::InvalidArgumentError(absl::StrFormat(
          "line %d: %s", line_no, std::string(status.message())));
    }
  }
  return absl::OkStatus();
}

std::vector<std::string> ConfigKeys() {
  std::vector<std::string> keys;
  for (const auto& [k, v] : Setters()) keys.push_back(k);
  return keys;
}

}  // namespace fairfrontier
