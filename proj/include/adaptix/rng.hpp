// Copyright 2026 The adaptix authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// =============================================================================

#ifndef ADAPTIX_RNG_HPP_
#define ADAPTIX_RNG_HPP_

#include <cstdint>

namespace adaptix {

// Seeded splitmix64 stream. Identical seed => identical draw sequence, so
// every run is replayable from its seed. Single-owner mutable state: never
// share one instance between concurrent runs.
//
// Gaussian draws use Box-Muller; one transform consumes exactly two uniform
// draws and both outputs are returned in order (the second from a cached
// spare), keeping the stream position predictable.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  // Next raw 64-bit value (splitmix64).
  uint64_t next_u64();

  // Uniform draw in (0, 1].
  double uniform01();

  // Uniform draw in [lo, hi].
  double uniform(double lo, double hi);

  // Standard normal draw.
  double gauss();

  // N(mean, sd^2) draw; sd == 0 returns mean exactly without consuming
  // any uniforms.
  double gauss(double mean, double sd);

  // Uniform integer in [0, n).
  uint64_t below(uint64_t n);

 private:
  uint64_t state_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace adaptix

#endif  // ADAPTIX_RNG_HPP_
