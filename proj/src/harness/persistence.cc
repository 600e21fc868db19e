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

#include "fairfrontier/harness/persistence.h"

#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <set>
#include <sstream>

#include "absl/strings/str_format.h"
#include "fairfrontier/core/status_macros.h"
#include "json.hpp"

namespace fairfrontier {
namespace {

using nlohmann::json;

constexpr const char* kNumericFields[] = {
    "eps_spec", "fairness_spec", "eps_achieved",
    "max_disparity", "accuracy", "coverage"};

double* NumericField(ExperimentRecord& r, std::string_view name) {
  if (name == "eps_spec") return &r.eps_spec;
  if (name == "fairness_spec") return &r.fairness_spec;
  if (name == "eps_achieved") return &r.eps_achieved;
  if (name == "max_disparity") return &r.max_disparity;
  if (name == "accuracy") return &r.accuracy;
  if (name == "coverage") return &r.coverage;
  return nullptr;
}

std::string FormatDouble(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, end);
}

json RecordToJson(const ExperimentRecord& r) {
  json j = json::object();
  j["framework"] = std::string(FrameworkName(r.framework));
  j["eps_spec"] = r.eps_spec;
  j["fairness_spec"] = r.fairness_spec;
  j["eps_achieved"] = r.eps_achieved;
  j["max_disparity"] = r.max_disparity;
  j["accuracy"] = r.accuracy;
  j["coverage"] = r.coverage;
  j["seed"] = r.seed;
  j["flags"] = r.flags;
  j["extra"] = json::object();
  for (const auto& [k, v] : r.extra) j["extra"][k] = v;
  return j;
}

absl::Status CheckFinite(const ExperimentRecord& r, size_t index) {
  ExperimentRecord copy = r;
  for (const char* name : kNumericFields) {
    if (!std::isfinite(*NumericField(copy, name))) {
      return absl::InvalidArgumentError(absl::StrFormat(
          "records[%d].%s is not finite", index, name));
    }
  }
  for (const auto& [k, v] : r.extra) {
    if (!std::isfinite(v)) {
      return absl::InvalidArgumentError(absl::StrFormat(
          "records[%d].extra.%s is not finite", index, k));
    }
  }
  return absl::OkStatus();
}

absl::Status FieldError(const std::string& path, std::string_view what) {
  return absl::InvalidArgumentError(
      absl::StrFormat("%s: %s", path, std::string(what)));
}

absl::StatusOr<ExperimentRecord> RecordFromJson(
    const json& j, size_t index, std::vector<std::string>& warnings) {
  const std::string base = absl::StrFormat("records[%d]", index);
  if (!j.is_object()) return FieldError(base, "expected an object");
  ExperimentRecord r;
  if (!j.contains("framework")) return FieldError(base + ".framework", "missing");
  if (!j["framework"].is_string()) {
    return FieldError(base + ".framework", "expected a string");
  }
  absl::StatusOr<Framework> fw = ParseFramework(j["framework"].get<std::string>());
  if (!fw.ok()) return FieldError(base + ".framework", std::string(fw.status().message()));
  r.framework = *fw;
  for (const char* name : kNumericFields) {
    const std::string path = base + "." + name;
    if (!j.contains(name)) return FieldError(path, "missing");
    if (!j[name].is_number()) return FieldError(path, "expected a number");
    *NumericField(r, name) = j[name].get<double>();
  }
  if (!j.contains("seed")) return FieldError(base + ".seed", "missing");
  if (!j["seed"].is_number_unsigned()) {
    return FieldError(base + ".seed", "expected a nonnegative integer");
  }
  r.seed = j["seed"].get<uint64_t>();
  if (j.contains("flags")) {
    if (!j["flags"].is_array()) return FieldError(base + ".flags", "expected an array");
    for (size_t i = 0; i < j["flags"].size(); ++i) {
      if (!j["flags"][i].is_string()) {
        return FieldError(absl::StrFormat("%s.flags[%d]", base, i),
                          "expected a string");
      }
      r.flags.push_back(j["flags"][i].get<std::string>());
    }
  }
  if (j.contains("extra")) {
    if (!j["extra"].is_object()) return FieldError(base + ".extra", "expected an object");
    for (const auto& [k, v] : j["extra"].items()) {
      if (!v.is_number()) {
        return FieldError(base + ".extra." + k, "expected a number");
      }
      r.extra[k] = v.get<double>();
    }
  }
  static const std::set<std::string> kKnown = {
      "framework", "eps_spec", "fairness_spec", "eps_achieved", "max_disparity",
      "accuracy", "coverage", "seed", "flags", "extra"};
  for (const auto& [k, v] : j.items()) {
    if (!kKnown.contains(k)) {
      warnings.push_back(absl::StrFormat("%s: unknown field '%s' ignored", base, k));
    }
  }
  return r;
}

}  // namespace

absl::StatusOr<std::string> FrontierToJson(const FrontierDocument& document) {
  json root = json::object();
  root["meta"] = {{"schema_version", document.meta.schema_version},
                  {"dataset", document.meta.dataset},
                  {"generated_at", document.meta.generated_at},
                  {"master_seed", document.meta.master_seed}};
  root["records"] = json::array();
  for (size_t i = 0; i < document.records.size(); ++i) {
    FF_RETURN_IF_ERROR(CheckFinite(document.records[i], i));
    root["records"].push_back(RecordToJson(document.records[i]));
  }
  return root.dump(2) + "\n";
}

absl::StatusOr<LoadedFrontier> ParseFrontierJson(std::string_view text) {
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    size_t line = 1, column = 1;
    const size_t stop = std::min<size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (size_t i = 0; i < stop; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    return absl::InvalidArgumentError(absl::StrFormat(
        "line %d, column %d: malformed JSON (%s)", line, column, e.what()));
  }
  if (!root.is_object()) return FieldError("$", "expected an object");

  LoadedFrontier out;
  if (!root.contains("meta")) return FieldError("meta", "missing");
  const json& meta = root["meta"];
  if (!meta.is_object()) return FieldError("meta", "expected an object");
  if (!meta.contains("schema_version") || !meta["schema_version"].is_number_integer()) {
    return FieldError("meta.schema_version", "expected an integer");
  }
  out.document.meta.schema_version = meta["schema_version"].get<int>();
  if (out.document.meta.schema_version != kFrontierSchemaVersion) {
    return FieldError("meta.schema_version",
                      absl::StrFormat("unsupported version %d (expected %d)",
                                      out.document.meta.schema_version,
                                      kFrontierSchemaVersion));
  }
  for (const char* key : {"dataset", "generated_at"}) {
    if (!meta.contains(key) || !meta[key].is_string()) {
      return FieldError(std::string("meta.") + key, "expected a string");
    }
  }
  out.document.meta.dataset = meta["dataset"].get<std::string>();
  out.document.meta.generated_at = meta["generated_at"].get<std::string>();
  if (!meta.contains("master_seed") || !meta["master_seed"].is_number_unsigned()) {
    return FieldError("meta.master_seed", "expected a nonnegative integer");
  }
  out.document.meta.master_seed = meta["master_seed"].get<uint64_t>();
  for (const auto& [k, v] : meta.items()) {
    if (k != "schema_version" && k != "dataset" && k != "generated_at" &&
        k != "master_seed") {
      out.warnings.push_back(absl::StrFormat("meta: unknown field '%s' ignored", k));
    }
  }

  if (!root.contains("records")) return FieldError("records", "missing");
  if (!root["records"].is_array()) return FieldError("records", "expected an array");
  for (size_t i = 0; i < root["records"].size(); ++i) {
    FF_ASSIGN_OR_RETURN(ExperimentRecord r,
                        RecordFromJson(root["records"][i], i, out.warnings));
    out.document.records.push_back(std::move(r));
  }
  for (const auto& [k, v] : root.items()) {
    if (k != "meta" && k != "records") {
      out.warnings.push_back(absl::StrFormat("unknown top-level field '%s' ignored", k));
    }
  }
  return out;
}

absl::Status SaveFrontier(const std::string& path,
                          const FrontierDocument& document) {
  FF_ASSIGN_OR_RETURN(std::string text, FrontierToJson(document));
  return WriteFile(path, text);
}

absl::StatusOr<LoadedFrontier> LoadFrontier(const std::string& path) {
  FF_ASSIGN_OR_RETURN(std::string text, ReadFile(path));
  absl::StatusOr<LoadedFrontier> loaded = ParseFrontierJson(text);
  if (!loaded.ok()) {
    return absl::Status(loaded.status().code(),
                        absl::StrFormat("%s: %s", path,
                                        std::string(loaded.status().message())));
  }
  return loaded;
}

std::string RecordsToCsv(std::span<const ExperimentRecord> records) {
  std::set<std::string> extra_keys;
  for (const ExperimentRecord& r : records) {
    for (const auto& [k, v] : r.extra) extra_keys.insert(k);
  }
  std::ostringstream out;
  out << "framework,eps_spec,fairness_spec,eps_achieved,max_disparity,"
         "accuracy,coverage,seed,flags";
  for (const std::string& k : extra_keys) out << ",extra." << k;
  out << "\n";
  for (const ExperimentRecord& r : records) {
    std::string flags;
    for (size_t i = 0; i < r.flags.size(); ++i) {
      if (i > 0) flags += ";";
      flags += r.flags[i];
    }
    out << FrameworkName(r.framework) << "," << FormatDouble(r.eps_spec) << ","
        << FormatDouble(r.fairness_spec) << "," << FormatDouble(r.eps_achieved)
        << "," << FormatDouble(r.max_disparity) << ","
        << FormatDouble(r.accuracy) << "," << FormatDouble(r.coverage) << ","
        << r.seed << "," << flags;
    for (const std::string& k : extra_keys) {
      out << ",";
      auto it = r.extra.find(k);
      if (it != r.extra.end()) out << FormatDouble(it->second);
    }
    out << "\n";
  }
  return out.str();
}

std::string RecordToJsonString(const ExperimentRecord& record) {
  return RecordToJson(record).dump(2) + "\n";
}

std::string RecordsToJson(std::span<const ExperimentRecord> records) {
  json arr = json::array();
  for (const ExperimentRecord& r : records) arr.push_back(RecordToJson(r));
  return arr.dump(2) + "\n";
}

std::string GateTraceToCsv(std::span<const GateTraceEntry> trace) {
  std::ostringstream out;
  out << "index,group,label,decision,condition\n";
  for (size_t i = 0; i < trace.size(); ++i) {
    const GateTraceEntry& e = trace[i];
    out << i << "," << e.group << "," << e.label << ","
        << GateDecisionName(e.decision) << ",";
    if (e.condition.has_value()) out << FormatDouble(*e.condition);
    out << "\n";
  }
  return out.str();
}

std::string CurrentUtcTimestamp() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &utc);
  return buf;
}

absl::StatusOr<std::string> ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return absl::NotFoundError(absl::StrFormat("cannot open '%s'", path));
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

absl::Status WriteFile(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    return absl::PermissionDeniedError(
        absl::StrFormat("cannot write '%s'", path));
  }
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) return absl::DataLossError(absl::StrFormat("write to '%s' failed", path));
  return absl::OkStatus();
}

}  // namespace fairfrontier
