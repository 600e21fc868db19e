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

#ifndef FAIRFRONTIER_CORE_RNG_H_
#define FAIRFRONTIER_CORE_RNG_H_

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <random>
#include <vector>

#include "absl/status/statusor.h"

namespace fairfrontier {

// Deterministic random source shared by every pipeline.
//
// Engine: std::mt19937_64 (MT19937-64, whose output sequence is pinned by the
// C++ standard), seeded with the 64-bit seed directly.
// Uniforms: the top 53 bits of one engine output, u = (x >> 11 + 0.5) / 2^53,
// which lies strictly inside (0, 1).
// Gaussians: Box-Muller. Each pair of uniforms (u1, u2) yields
// r cos(2 pi u2) and then r sin(2 pi u2) with r = sqrt(-2 ln u1); the second
// value is cached and returned by the next call.
//
// Nothing here uses std::*_distribution, whose algorithms are
// implementation-defined.
class SeededRng {
 public:
  explicit SeededRng(uint64_t seed) : engine_(seed), seed_(seed) {}

  uint64_t seed() const { return seed_; }

  uint64_t NextU64() { return engine_(); }
  double Uniform();
  double StandardNormal();

  // sigma * StandardNormal(). sigma == 0 still consumes one normal so that
  // draw sequences stay aligned across noise levels, and returns exactly 0.
  double Gaussian(double sigma);

  bool Bernoulli(double p) { return Uniform() < p; }

  // Uniform integer in [0, n), n > 0, by rejection (no modulo bias).
  size_t UniformIndex(size_t n);

  // Fisher-Yates, last index first.
  template <typename T>
  void Shuffle(std::vector<T>& values) {
    for (size_t i = values.size(); i > 1; --i) {
      std::swap(values[i - 1], values[UniformIndex(i)]);
    }
  }

 private:
  std::mt19937_64 engine_;
  uint64_t seed_;
  std::optional<double> spare_normal_;
};

// Checked N(0, sigma^2) draw. Negative or non-finite sigma is an error.
absl::StatusOr<double> GaussianDraw(SeededRng& rng, double sigma);

// SplitMix64 finalizer.
uint64_t MixSeed(uint64_t value);

// Derives an independent seed from a master seed and a list of coordinates
// (grid cell indices, replicate numbers, stream tags).
uint64_t DeriveSeed(uint64_t master, std::initializer_list<uint64_t> coords);

}  // namespace fairfrontier

#endif  // FAIRFRONTIER_CORE_RNG_H_
