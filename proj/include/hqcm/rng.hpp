// Copyright 2026 The hqcm authors
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

#ifndef HQCM_RNG_HPP
#define HQCM_RNG_HPP

#include <cstdint>
#include <random>
#include <span>

#include "hqcm/errors.hpp"

namespace hqcm {

// Seedable random stream. Trajectory streams are derived from
// (master seed, trajectory index) so batches stay reproducible and
// trajectories never share a stream.
class RandomStream {
public:
  explicit RandomStream(std::uint64_t seed) : engine_(mix(seed)) {}

  static RandomStream for_trajectory(std::uint64_t master_seed,
                                     std::uint64_t trajectory_index) {
    return RandomStream(mix(master_seed) ^
                        mix(trajectory_index + 0x9e3779b97f4a7c15ULL));
  }

  // Uniform in [0, 1). Drawn directly from engine bits so the sequence does
  // not depend on the standard library's distribution implementation.
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Sample an index with the given (not necessarily normalized) nonnegative
  // weights. Throws ImpossibleOutcomeError when all weights vanish.
  int sample(std::span<const double> weights) {
    double total = 0.0;
    for (double w : weights) {
      total += w;
    }
    if (total <= 0.0) {
      throw ImpossibleOutcomeError("sample: all weights are zero");
    }
    double u = uniform01() * total;
    double acc = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
      acc += weights[i];
      if (u < acc) {
        return static_cast<int>(i);
      }
    }
    // Roundoff pushed u past the last bin edge.
    for (std::size_t i = weights.size(); i-- > 0;) {
      if (weights[i] > 0.0) {
        return static_cast<int>(i);
      }
    }
    throw ImpossibleOutcomeError("sample: all weights are zero");
  }

private:
  // splitmix64 finalizer; spreads nearby seeds across the state space.
  static std::uint64_t mix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

  std::mt19937_64 engine_;
};

} // namespace hqcm

#endif
