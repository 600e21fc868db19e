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

#include "fairfrontier/core/rng.h"

#include <cassert>
#include <cmath>
#include <numbers>

#include "absl/status/status.h"

namespace fairfrontier {

double SeededRng::Uniform() {
  constexpr double kScale = 1.0 / 9007199254740992.0;  // 2^-53
  return (static_cast<double>(engine_() >> 11) + 0.5) * kScale;
}

double SeededRng::StandardNormal() {
  if (spare_normal_.has_value()) {
    const double z = *spare_normal_;
    spare_normal_.reset();
    return z;
  }
  const double u1 = Uniform();
  const double u2 = Uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  spare_normal_ = r * std::sin(theta);
  return r * std::cos(theta);
}

double SeededRng::Gaussian(double sigma) {
  const double z = StandardNormal();
  if (sigma == 0.0) return 0.0;
  return sigma * z;
}

size_t SeededRng::UniformIndex(size_t n) {
  assert(n > 0);
  const uint64_t bound = static_cast<uint64_t>(n);
  // Largest multiple of bound that fits; draws above it are rejected.
  const uint64_t limit = UINT64_MAX - (UINT64_MAX % bound + 1) % bound;
  uint64_t x;
  do {
    x = engine_();
  } while (x > limit);
  return static_cast<size_t>(x % bound);
}

absl::StatusOr<double> GaussianDraw(SeededRng& rng, double sigma) {
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
    return absl::InvalidArgumentError(
        "gaussian noise scale must be finite and nonnegative");
  }
  return rng.Gaussian(sigma);
}

uint64_t MixSeed(uint64_t value) {
  uint64_t z = value + 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

uint64_t DeriveSeed(uint64_t master, std::initializer_list<uint64_t> coords) {
  uint64_t h = MixSeed(master);
  for (uint64_t c : coords) h = MixSeed(h ^ MixSeed(c));
  return h;
}

}  // namespace fairfrontier
