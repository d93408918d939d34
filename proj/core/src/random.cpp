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

#include "modlab/random.hpp"

#include <cmath>
#include <numbers>

namespace modlab {

namespace {
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
}

std::uint64_t splitmix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t SeedStream::next_u64() {
  ++counter_;
  return splitmix64(seed_ + counter_ * kGolden);
}

double SeedStream::uniform() {
  // (k + 1) / 2^53 lies in (0, 1].
  return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
}

double SeedStream::normal() {
  const double u1 = uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Complex SeedStream::complex_normal() {
  const double re = normal();
  const double im = normal();
  return {re * std::numbers::sqrt2 / 2.0, im * std::numbers::sqrt2 / 2.0};
}

SeedStream SeedStream::fork(std::uint64_t label) const {
  return SeedStream(splitmix64(seed_ ^ splitmix64(label + kGolden)));
}

Matrix random_ginibre(SeedStream& rng, Eigen::Index rows, Eigen::Index cols) {
  Matrix g(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) g(i, j) = rng.complex_normal();
  return g;
}

Matrix random_hermitian(SeedStream& rng, Eigen::Index n) {
  const Matrix g = random_ginibre(rng, n, n);
  return hermitian_part(g);
}

Matrix random_unitary(SeedStream& rng, Eigen::Index n) {
  const Matrix g = random_ginibre(rng, n, n);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * identity(n);
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index k = 0; k < n; ++k) {
    const double mag = std::abs(r(k, k));
    if (mag > 0.0) q.col(k) *= r(k, k) / mag;
  }
  return q;
}

Matrix random_density(SeedStream& rng, Eigen::Index n, double mix) {
  const Matrix w = random_ginibre(rng, n, n);
  Matrix rho = w * w.adjoint();
  rho /= rho.trace().real();
  rho = (1.0 - mix) * rho + (mix / static_cast<double>(n)) * identity(n);
  return hermitian_part(rho);
}

Vector random_unit_vector(SeedStream& rng, Eigen::Index n) {
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = rng.complex_normal();
  return v / v.norm();
}

}  // namespace modlab
