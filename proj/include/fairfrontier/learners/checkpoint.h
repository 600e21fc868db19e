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

#ifndef FAIRFRONTIER_LEARNERS_CHECKPOINT_H_
#define FAIRFRONTIER_LEARNERS_CHECKPOINT_H_

#include <cstdint>
#include <string>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "fairfrontier/learners/model.h"

namespace fairfrontier {

// Checkpoint file: one line of JSON
//   {"format":"fairfrontier-model","version":1,"architecture":...,"dim":...,
//    "num_classes":...,"hidden_width":...,"seed":...,"parameter_count":...}
// terminated by '\n', followed by parameter_count little-endian IEEE-754
// float64 values in the model's flat parameter order.
absl::Status SaveCheckpoint(const std::string& path, const Model& model,
                            uint64_t seed);

struct Checkpoint {
  Model model;
  uint64_t seed = 0;
};

absl::StatusOr<Checkpoint> LoadCheckpoint(const std::string& path);

}  // namespace fairfrontier

#endif  // FAIRFRONTIER_LEARNERS_CHECKPOINT_H_
