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

#include "fairfrontier/cli/commands.h"

#include <algorithm>
#include <filesystem>
#include <optional>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/str_format.h"
#include "fairfrontier/cli/config.h"
#include "fairfrontier/core/status_macros.h"
#include "fairfrontier/harness/grid.h"
#include "fairfrontier/harness/persistence.h"
#include "fairfrontier/harness/synthetic.h"
#include "fairfrontier/pareto/pareto.h"
#include "json.hpp"

namespace fairfrontier {
namespace {

namespace fs = std::filesystem;

// An input problem (exit 2) or an empty feasible set (exit 1).
struct CommandError {
  int code = kExitBadInput;
  std::string message;
};

using CommandResult = std::optional<CommandError>;

CommandResult BadInput(const absl::Status& status) {
  return CommandError{kExitBadInput, std::string(status.message())};
}

enum class OutputFormat { kTable, kJson, kCsv };

CommandResult ParseFormat(const std::string& name, OutputFormat& format) {
  if (name == "table") {
    format = OutputFormat::kTable;
  } else if (name == "json") {
    format = OutputFormat::kJson;
  } else if (name == "csv") {
    format = OutputFormat::kCsv;
  } else {
    return CommandError{kExitBadInput,
                        "--format must be table, json or csv, got '" + name + "'"};
  }
  return std::nullopt;
}

void PrintTable(std::span<const ExperimentRecord> records, std::ostream& out) {
  out << absl::StrFormat("%-10s %8s %9s %12s %13s %9s %9s %6s  %s\n",
                         "framework", "eps_spec", "fairness", "eps_achieved",
                         "max_disparity", "accuracy", "coverage", "seed", "flags");
  for (const ExperimentRecord& r : records) {
    std::string flags;
    for (const std::string& f : r.flags) flags += (flags.empty() ? "" : ",") + f;
    out << absl::StrFormat("%-10s %8.6g %9.6g %12.6f %13.6f %9.6f %9.6f %6d  %s\n",
                           std::string(FrameworkName(r.framework)), r.eps_spec,
                           r.fairness_spec, r.eps_achieved, r.max_disparity,
                           r.accuracy, r.coverage, r.seed, flags);
  }
}

void PrintRecords(std::span<const ExperimentRecord> records,
                  OutputFormat format, std::ostream& out) {
  switch (format) {
    case OutputFormat::kTable:
      PrintTable(records, out);
      break;
    case OutputFormat::kJson:
      out << RecordsToJson(records);
      break;
    case OutputFormat::kCsv:
      out << RecordsToCsv(records);
      break;
  }
}

// "field<op>value" with op one of = != < <= > >=. framework supports = and
// != only; seed and the numeric metric fields support all six.
struct RecordFilter {
  std::string field;
  std::string op;
  std::string value;
  double number = 0.0;

  bool Matches(const ExperimentRecord& r) const {
    if (field == "framework") {
      const bool eq = FrameworkName(r.framework) == value;
      return op == "=" ? eq : !eq;
    }
    const double x = field == "seed" ? static_cast<double>(r.seed)
                                     : *RecordField(r, field);
    if (op == "=") return x == number;
    if (op == "!=") return x != number;
    if (op == "<") return x < number;
    if (op == "<=") return x <= number;
    if (op == ">") return x > number;
    return x >= number;
  }
};

absl::StatusOr<RecordFilter> ParseFilter(const std::string& text) {
  const size_t pos = text.find_first_of("=!<>");
  if (pos == std::string::npos || pos == 0) {
    return absl::InvalidArgumentError(
        absl::StrFormat("--filter '%s': expected field<op>value", text));
  }
  RecordFilter filter;
  filter.field = text.substr(0, pos);
  size_t value_at = pos + 1;
  if (value_at < text.size() && text[value_at] == '=' && text[pos] != '=') {
    ++value_at;
  }
  filter.op = text.substr(pos, value_at - pos);
  filter.value = text.substr(value_at);
  if (filter.op == "!") {
    return absl::InvalidArgumentError(
        absl::StrFormat("--filter '%s': unknown operator", text));
  }
  if (filter.field == "framework") {
    if (filter.op != "=" && filter.op != "!=") {
      return absl::InvalidArgumentError(
          absl::StrFormat("--filter '%s': framework supports = and != only", text));
    }
    FF_RETURN_IF_ERROR(ParseFramework(filter.value).status());
    return filter;
  }
  if (filter.field != "seed") {
    ExperimentRecord probe;
    FF_RETURN_IF_ERROR(RecordField(probe, filter.field).status());
  }
  std::istringstream in(filter.value);
  if (!(in >> filter.number) || !in.eof()) {
    return absl::InvalidArgumentError(
        absl::StrFormat("--filter '%s': '%s' is not a number", text, filter.value));
  }
  return filter;
}

absl::StatusOr<std::vector<ExperimentRecord>> LoadFiltered(
    const std::string& path, const std::vector<std::string>& filter_texts,
    std::ostream& err) {
  FF_ASSIGN_OR_RETURN(LoadedFrontier loaded, LoadFrontier(path));
  for (const std::string& w : loaded.warnings) err << "warning: " << w << "\n";
  std::vector<RecordFilter> filters;
  for (const std::string& t : filter_texts) {
    FF_ASSIGN_OR_RETURN(RecordFilter f, ParseFilter(t));
    filters.push_back(std::move(f));
  }
  std::vector<ExperimentRecord> kept;
  for (ExperimentRecord& r : loaded.document.records) {
    if (std::all_of(filters.begin(), filters.end(),
                    [&](const RecordFilter& f) { return f.Matches(r); })) {
      kept.push_back(std::move(r));
    }
  }
  return kept;
}

absl::Status EnsureDirectory(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    return absl::PermissionDeniedError(absl::StrFormat(
        "cannot create directory '%s': %s", dir.string(), ec.message()));
  }
  return absl::OkStatus();
}

absl::StatusOr<CliConfig> LoadConfig(const std::string& path,
                                     const std::vector<std::string>& overrides) {
  CliConfig config;
  FF_ASSIGN_OR_RETURN(std::string text, ReadFile(path));
  absl::Status status = ApplyConfigText(text, config);
  if (!status.ok()) {
    return absl::InvalidArgumentError(
        absl::StrFormat("%s: %s", path, std::string(status.message())));
  }
  for (const std::string& o : overrides) {
    const size_t eq = o.find('=');
    if (eq == std::string::npos) {
      return absl::InvalidArgumentError(
          absl::StrFormat("--set '%s': expected key=value", o));
    }
    FF_RETURN_IF_ERROR(ApplyConfigValue(o.substr(0, eq), o.substr(eq + 1), config));
  }
  return config;
}

std::string SeedComment(uint64_t master_seed) {
  return absl::StrFormat("# master_seed=%d\n", master_seed);
}

std::string ExamplesCsv(std::span<const LabeledExample> examples, int dim,
                        uint64_t master_seed) {
  std::ostringstream out;
  out << SeedComment(master_seed) << "group,label";
  for (int j = 0; j < dim; ++j) out << ",x" << j;
  out << "\n";
  out.precision(17);
  for (const LabeledExample& e : examples) {
    out << e.group << "," << e.label;
    for (double v : e.features) out << "," << v;
    out << "\n";
  }
  return out.str();
}

CommandResult GenData(const std::string& spec_path, const std::string& out_dir,
                      std::optional<uint64_t> seed_flag,
                      const std::vector<std::string>& overrides,
                      std::ostream& out) {
  absl::StatusOr<CliConfig> config = LoadConfig(spec_path, overrides);
  if (!config.ok()) return BadInput(config.status());
  if (seed_flag.has_value()) config->seed = *seed_flag;
  if (absl::Status s = config->grid.data.Validate(); !s.ok()) return BadInput(s);
  for (uint64_t replica : config->grid.seeds) {
    const SyntheticSpec data =
        ReplicaDataSpec(config->grid, config->seed, replica);
    absl::StatusOr<DatasetSplits> splits = Generate(data);
    if (!splits.ok()) return BadInput(splits.status());
    const fs::path dir = fs::path(out_dir) / absl::StrFormat("seed_%d", replica);
    if (absl::Status s = EnsureDirectory(dir); !s.ok()) return BadInput(s);
    const std::pair<const char*, const std::vector<LabeledExample>*> parts[] = {
        {"train.csv", &splits->teacher_train},
        {"public.csv", &splits->public_unlabeled},
        {"test.csv", &splits->test}};
    for (const auto& [name, examples] : parts) {
      absl::Status s = WriteFile((dir / name).string(),
                                 ExamplesCsv(*examples, splits->dim, config->seed));
      if (!s.ok()) return BadInput(s);
    }
    nlohmann::json meta = {{"master_seed", config->seed},
                           {"replica_seed", replica},
                           {"data_seed", data.seed},
                           {"dim", splits->dim},
                           {"num_groups", splits->num_groups},
                           {"num_classes", splits->num_classes},
                           {"train", splits->teacher_train.size()},
                           {"public", splits->public_unlabeled.size()},
                           {"test", splits->test.size()}};
    if (absl::Status s = WriteFile((dir / "meta.json").string(), meta.dump(2) + "\n");
        !s.ok()) {
      return BadInput(s);
    }
    out << absl::StrFormat("wrote %s (%d/%d/%d examples)\n", dir.string(),
                           splits->teacher_train.size(),
                           splits->public_unlabeled.size(), splits->test.size());
  }
  return std::nullopt;
}

std::string CellStem(const GridCellResult& cell) {
  return absl::StrFormat("cell%04d_%s_seed%d_eps%g_fair%g", cell.index,
                         std::string(FrameworkName(cell.record.framework)),
                         cell.record.seed, cell.record.eps_spec,
                         cell.record.fairness_spec);
}

CommandResult Grid(const std::string& config_path, const std::string& out_path,
                   std::optional<uint64_t> seed_flag, std::optional<int> jobs_flag,
                   const std::vector<std::string>& overrides, std::ostream& out,
                   std::ostream& err) {
  absl::StatusOr<CliConfig> config = LoadConfig(config_path, overrides);
  if (!config.ok()) return BadInput(config.status());
  if (seed_flag.has_value()) config->seed = *seed_flag;
  if (jobs_flag.has_value()) config->jobs = *jobs_flag;
  if (config->jobs < 1) {
    return CommandError{kExitBadInput, "--jobs must be at least 1"};
  }
  absl::StatusOr<GridResult> result =
      RunGrid(config->grid, config->seed, config->jobs);
  if (!result.ok()) return BadInput(result.status());

  FrontierDocument doc;
  doc.meta.dataset = config->grid.dataset;
  doc.meta.generated_at = CurrentUtcTimestamp();
  doc.meta.master_seed = config->seed;
  doc.records = result->Records();

  const fs::path json_path(out_path);
  const fs::path dir = json_path.has_parent_path() ? json_path.parent_path()
                                                   : fs::path(".");
  const fs::path ledgers = dir / "ledgers";
  if (absl::Status s = EnsureDirectory(ledgers); !s.ok()) return BadInput(s);
  if (absl::Status s = SaveFrontier(json_path.string(), doc); !s.ok()) {
    return BadInput(s);
  }
  fs::path csv_path = json_path;
  csv_path.replace_extension(".csv");
  if (absl::Status s = WriteFile(csv_path.string(), SeedComment(config->seed) +
                                                        RecordsToCsv(doc.records));
      !s.ok()) {
    return BadInput(s);
  }
  for (const GridCellResult& cell : result->cells) {
    const std::string stem = CellStem(cell);
    std::vector<std::pair<std::string, std::string>> files;
    if (!cell.ledger_csv.empty()) {
      files.emplace_back(stem + "_privacy.csv", cell.ledger_csv);
    }
    if (!cell.aggregation_trace.empty()) {
      files.emplace_back(stem + "_aggregation_gate.csv",
                         GateTraceToCsv(cell.aggregation_trace));
    }
    if (!cell.inference_trace.empty()) {
      files.emplace_back(stem + "_inference_gate.csv",
                         GateTraceToCsv(cell.inference_trace));
    }
    for (const auto& [name, contents] : files) {
      absl::Status s = WriteFile((ledgers / name).string(),
                                 SeedComment(config->seed) + contents);
      if (!s.ok()) return BadInput(s);
    }
  }
  PrintTable(doc.records, out);
  err << absl::StrFormat("wrote %d records to %s\n", doc.records.size(),
                         json_path.string());
  return std::nullopt;
}

CommandResult FrontierCommand(const std::string& in, const std::vector<std::string>& filters,
                              OutputFormat format, std::ostream& out,
                              std::ostream& err) {
  absl::StatusOr<std::vector<ExperimentRecord>> records =
      LoadFiltered(in, filters, err);
  if (!records.ok()) return BadInput(records.status());
  const std::vector<ExperimentRecord> front =
      Frontier(*records, ObjectiveSpec::Default());
  PrintRecords(front, format, out);
  return std::nullopt;
}

CommandResult Query(const std::string& in, const std::vector<std::string>& filters,
                    double max_eps, double max_gamma, const std::string& objective,
                    OutputFormat format, std::ostream& out, std::ostream& err) {
  absl::StatusOr<QueryObjective> obj = ParseQueryObjective(objective);
  if (!obj.ok()) return BadInput(obj.status());
  absl::StatusOr<std::vector<ExperimentRecord>> records =
      LoadFiltered(in, filters, err);
  if (!records.ok()) return BadInput(records.status());
  std::optional<ExperimentRecord> best = FrontierQuery(
      *records, {.max_eps = max_eps, .max_gamma = max_gamma}, *obj);
  if (!best.has_value()) {
    return CommandError{kExitInfeasible, "no feasible record"};
  }
  if (format == OutputFormat::kJson) {
    out << RecordToJsonString(*best);
  } else {
    PrintRecords(std::span<const ExperimentRecord>(&*best, 1), format, out);
  }
  return std::nullopt;
}

CommandResult ExportUi(const std::string& in, const std::string& out_dir,
                       std::ostream& out, std::ostream& err) {
  absl::StatusOr<std::string> text = ReadFile(in);
  if (!text.ok()) return BadInput(text.status());
  absl::StatusOr<LoadedFrontier> loaded = ParseFrontierJson(*text);
  if (!loaded.ok()) {
    return CommandError{kExitBadInput,
                        in + ": " + std::string(loaded.status().message())};
  }
  for (const std::string& w : loaded->warnings) err << "warning: " << w << "\n";
  const fs::path data_dir = fs::path(out_dir) / "data";
  if (absl::Status s = EnsureDirectory(data_dir); !s.ok()) return BadInput(s);
  if (absl::Status s = WriteFile((data_dir / "frontier.json").string(), *text);
      !s.ok()) {
    return BadInput(s);
  }
  const FrontierDocument& doc = loaded->document;
  std::set<std::string> frameworks;
  std::set<double> eps_values, fairness_values;
  for (const ExperimentRecord& r : doc.records) {
    frameworks.insert(std::string(FrameworkName(r.framework)));
    eps_values.insert(r.eps_spec);
    fairness_values.insert(r.fairness_spec);
  }
  nlohmann::json manifest = {
      {"schema_version", doc.meta.schema_version},
      {"frontier", "data/frontier.json"},
      {"dataset", doc.meta.dataset},
      {"generated_at", doc.meta.generated_at},
      {"master_seed", doc.meta.master_seed},
      {"record_count", doc.records.size()},
      {"frameworks", frameworks},
      {"eps_values", eps_values},
      {"fairness_values", fairness_values}};
  const fs::path manifest_path = fs::path(out_dir) / "manifest.json";
  if (absl::Status s = WriteFile(manifest_path.string(), manifest.dump(2) + "\n");
      !s.ok()) {
    return BadInput(s);
  }
  out << absl::StrFormat("exported %d records to %s\n", doc.records.size(),
                         out_dir);
  return std::nullopt;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Privacy/fairness frontier experiments", "fairfrontier"};
  app.require_subcommand(1);

  std::optional<uint64_t> seed;
  std::optional<int> jobs;
  std::vector<std::string> overrides;
  std::string spec_path, config_path, in_path, out_path;
  std::vector<std::string> filters;
  std::string format_name = "table";
  double max_eps = 0.0, max_gamma = 0.0;
  std::string objective = "coverage";

  CLI::App* gen = app.add_subcommand("gen-data", "Write synthetic dataset splits");
  gen->add_option("--spec", spec_path, "Config file with data.* keys")->required();
  gen->add_option("--out", out_path, "Output directory")->required();
  gen->add_option("--seed", seed, "Master seed");
  gen->add_option("--set", overrides, "Override a config key (key=value)");

  CLI::App* grid = app.add_subcommand("grid", "Run an experiment grid");
  grid->add_option("--config", config_path, "Config file")->required();
  grid->add_option("--out", out_path, "Output frontier.json path")->required();
  grid->add_option("--seed", seed, "Master seed");
  grid->add_option("--jobs", jobs, "Cells run in parallel");
  grid->add_option("--set", overrides, "Override a config key (key=value)");

  CLI::App* frontier = app.add_subcommand("frontier", "Print the Pareto set");
  frontier->require_subcommand(0, 1);
  frontier->add_option("--in", in_path, "frontier.json");
  frontier->add_option("--filter", filters, "field<op>value, repeatable");
  frontier->add_option("--format", format_name, "table, json or csv");

  CLI::App* query =
      frontier->add_subcommand("query", "Best feasible record under constraints");
  query->add_option("--in", in_path, "frontier.json")->required();
  query->add_option("--max-eps", max_eps, "Largest admissible eps_achieved")
      ->required();
  query->add_option("--max-gamma", max_gamma, "Largest admissible max_disparity")
      ->required();
  query->add_option("--objective", objective, "coverage or accuracy");
  query->add_option("--filter", filters, "field<op>value, repeatable");
  query->add_option("--format", format_name, "table, json or csv");

  CLI::App* export_ui =
      app.add_subcommand("export-ui", "Copy frontier.json and a manifest for the UI");
  export_ui->add_option("--in", in_path, "frontier.json")->required();
  export_ui->add_option("--out", out_path, "UI data directory")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitBadInput;
  }

  CommandResult result;
  OutputFormat format = OutputFormat::kTable;
  if (*gen) {
    result = GenData(spec_path, out_path, seed, overrides, out);
  } else if (*grid) {
    result = Grid(config_path, out_path, seed, jobs, overrides, out, err);
  } else if (*frontier) {
    result = ParseFormat(format_name, format);
    if (!result.has_value()) {
      if (*query) {
        result = Query(in_path, filters, max_eps, max_gamma, objective, format,
                       out, err);
      } else if (in_path.empty()) {
        result = CommandError{kExitBadInput, "frontier: --in is required"};
      } else {
        result = FrontierCommand(in_path, filters, format, out, err);
      }
    }
  } else if (*export_ui) {
    result = ExportUi(in_path, out_path, out, err);
  }
  if (result.has_value()) {
    err << "error: " << result->message << "\n";
    return result->code;
  }
  return kExitOk;
}

}  // namespace fairfrontier
