// Copyright 2026 The modlab Authors
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

#pragma once

#include <cstdint>

#include "modlab/linalg.hpp"

namespace modlab {

/**
 * Counter-based deterministic random source.
 *
 * Draw k (k = 0, 1, 2, ...) is splitmix64(seed + (k + 1) * 0x9E3779B97F4A7C15),
 * where splitmix64 is the standard finalizer
 *
 *     z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9;
 *     z = (z ^ (z >> 27)) * 0x94D049BB133111EB;
 *     z =  z ^ (z >> 31);
 *
 * Uniform doubles take the top 53 bits; normals use Box-Muller on two
 * consecutive uniforms. The integer stream is identical on every platform.
 */
class SeedStream {
 public:
  explicit SeedStream(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t next_u64();
  /// Uniform on (0, 1].
  double uniform();
  double normal();
  /// Real and imaginary parts independent N(0, 1/2).
  Complex complex_normal();

  std::uint64_t seed() const { return seed_; }
  std::uint64_t counter() const { return counter_; }
  /// Independent stream keyed by (seed, label).
  SeedStream fork(std::uint64_t label) const;

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

std::uint64_t splitmix64(std::uint64_t z);

/// Ginibre matrix with complex_normal entries.
Matrix random_ginibre(SeedStream& rng, Eigen::Index rows, Eigen::Index cols);
/// (G + G^dagger) / 2 from a Ginibre G.
Matrix random_hermitian(SeedStream& rng, Eigen::Index n);
/// Haar unitary via QR of a Ginibre matrix with the R-diagonal phases removed.
Matrix random_unitary(SeedStream& rng, Eigen::Index n);
/// (1 - mix) W W^dagger / Tr + mix * 1/n; faithful for mix > 0.
Matrix random_density(SeedStream& rng, Eigen::Index n, double mix = 0.05);
/// Unit vector with complex_normal entries.
Vector random_unit_vector(SeedStream& rng, Eigen::Index n);

}  // namespace modlab
