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

#include "fairfrontier/learners/checkpoint.h"

#include <bit>
#include <cstring>
#include <fstream>

#include "absl/strings/str_format.h"
#include "fairfrontier/core/status_macros.h"
#include "json.hpp"

namespace fairfrontier {
namespace {

constexpr char kFormat[] = "fairfrontier-model";
constexpr int kVersion = 1;

static_assert(std::endian::native == std::endian::little,
              "checkpoint I/O assumes a little-endian host");

}  // namespace

absl::Status SaveCheckpoint(const std::string& path, const Model& model,
                            uint64_t seed) {
  const ModelConfig& c = model.config();
  const nlohmann::json header = {
      {"format", kFormat},
      {"version", kVersion},
      {"architecture", std::string(ArchitectureName(c.architecture))},
      {"dim", c.dim},
      {"num_classes", c.num_classes},
      {"hidden_width",
       c.architecture == Architecture::kMlp ? c.hidden_width : 0},
      {"seed", seed},
      {"parameter_count", model.parameter_count()}};
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) return absl::UnavailableError("cannot open " + path);
  out << header.dump() << '\n';
  const auto params = model.params();
  out.write(reinterpret_cast<const char*>(params.data()),
            static_cast<std::streamsize>(params.size() * sizeof(double)));
  if (!out) return absl::DataLossError("write failed for " + path);
  return absl::OkStatus();
}

absl::StatusOr<Checkpoint> LoadCheckpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return absl::NotFoundError("cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) {
    return absl::DataLossError(path + ": missing header line");
  }
  nlohmann::json header = nlohmann::json::parse(line, nullptr, false);
  if (header.is_discarded() || !header.is_object()) {
    return absl::DataLossError(path + ": header is not a JSON object");
  }
  if (header.value("format", "") != kFormat ||
      header.value("version", 0) != kVersion) {
    return absl::DataLossError(path + ": unsupported checkpoint format");
  }
  ModelConfig config;
  uint64_t seed = 0;
  size_t count = 0;
  try {
    FF_ASSIGN_OR_RETURN(
        config.architecture,
        ParseArchitecture(header.at("architecture").get<std::string>()));
    config.dim = header.at("dim").get<int>();
    config.num_classes = header.at("num_classes").get<int>();
    if (config.architecture == Architecture::kMlp) {
      config.hidden_width = header.at("hidden_width").get<int>();
    }
    seed = header.at("seed").get<uint64_t>();
    count = header.at("parameter_count").get<size_t>();
  } catch (const nlohmann::json::exception& e) {
    return absl::DataLossError(
        absl::StrFormat("%s: bad header field: %s", path, e.what()));
  }
  FF_ASSIGN_OR_RETURN(Model model, Model::Create(config));
  if (model.parameter_count() != count) {
    return absl::DataLossError(absl::StrFormat(
        "%s: header declares %d parameters, architecture has %d", path, count,
        model.parameter_count()));
  }
  auto params = model.mutable_params();
  in.read(reinterpret_cast<char*>(params.data()),
          static_cast<std::streamsize>(count * sizeof(double)));
  if (in.gcount() != static_cast<std::streamsize>(count * sizeof(double))) {
    return absl::DataLossError(path + ": truncated parameter block");
  }
  return Checkpoint{.model = std::move(model), .seed = seed};
}

}  // namespace fairfrontier
