// Copyright 2026 The StructMIA Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef STRUCTMIA_RNG_H_
#define STRUCTMIA_RNG_H_

#include <cstdint>
#include <random>

namespace structmia {

// Purposes that draw randomness. Each purpose gets its own stream for a given
// (seed, id) so that e.g. the salt-and-pepper mask does not shift when the
// dataset generator changes how many numbers it consumes.
enum class StreamTag : std::uint32_t {
  kImageContent = 1,
  kSceneTemplate = 2,
  kNaiveLossNoise = 3,
  kSaltPepper = 4,
  kSaturation = 5,
  kBrightness = 6,
  kTraining = 7,
  kTrainingInit = 8,
};

// A deterministic random stream keyed by (seed, id, tag).
//
// Only the engine (mt19937_64) and std::seed_seq are used from <random>: both
// are fully specified by the standard, so streams are identical across
// standard-library implementations. Distributions are implemented here for
// the same reason.
class Stream {
 public:
  Stream(std::uint64_t seed, std::uint64_t id, StreamTag tag);

  std::uint64_t NextU64() { return engine_(); }

  // Uniform in [0, 1) with 53 random bits.
  double Uniform();

  // Uniform in [lo, hi).
  double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform(); }

  // Uniform integer in [0, n). n must be positive.
  std::uint64_t Below(std::uint64_t n);

  // Standard normal via Box-Muller; caches the second variate.
  double Normal();

  bool Coin() { return (engine_() >> 63) != 0; }

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace structmia

#endif  // STRUCTMIA_RNG_H_
