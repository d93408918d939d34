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

/**
 * @file
 * Thermofield-double experiments on small spin chains: modular momentum of
 * nested regions, the shifted correlator F(s), a lattice-translation
 * diagnostic and the resolvent stability probe.
 *
 * Sites are numbered from 0 (the most significant tensor factor). The TFD
 * vector lives in H (x) H and is stored as the d^L x d^L matrix T with
 * |TFD> = sum_ij T_ij |i>|j>, so <TFD| A (x) B |TFD> = Tr(T^dagger A T B^T).
 */

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "modlab/interpolation.hpp"
#include "modlab/linalg.hpp"
#include "modlab/random.hpp"

namespace modlab {

enum class HamiltonianPreset { xx_chain, ising_tfield, random_gue };

std::optional<HamiltonianPreset> parse_preset(const std::string& name);
std::string preset_name(HamiltonianPreset preset);
/// Periodic nearest-neighbour presets are translation invariant; random-gue is not.
bool is_translation_invariant(HamiltonianPreset preset);

/// Transverse field of the ising-tfield preset.
inline constexpr double kIsingField = 1.05;

/**
 * Preset Hamiltonians on `sites` qubits with periodic boundary:
 *   xx-chain      sum_j X_j X_{j+1} + Y_j Y_{j+1}
 *   ising-tfield  -sum_j Z_j Z_{j+1} - 1.05 sum_j X_j
 *   random-gue    (A + A^dagger)/2, A complex Ginibre from the seed
 */
Matrix preset_hamiltonian(HamiltonianPreset preset, int sites, std::uint64_t seed);

/// Pauli matrix for 'I', 'X', 'Y' or 'Z'.
Matrix pauli(char name);

/**
 * Parses "Z@1", "X@0*X@2" or "I" into an operator on `sites` qubits.
 * Throws ConfigError on malformed input.
 */
Matrix parse_site_operator(const std::string& spec, int sites);

/// Half-open site range "a:b".
struct SiteRange {
  int begin = 0;
  int end = 0;
  std::vector<int> sites() const;
  bool contains(const SiteRange& other) const { return begin <= other.begin && other.end <= end; }
};

SiteRange parse_site_range(const std::string& spec);

class TfdModel {
 public:
  /**
   * Throws NonHermitianError for a non-Hermitian H and DomainError for a
   * negative beta. Energies are shifted by the ground energy before
   * exponentiating, so large beta does not underflow.
   */
  TfdModel(Matrix hamiltonian, double beta, int sites, int local_dim = 2, bool translation_invariant = false);

  const Matrix& hamiltonian() const { return hamiltonian_; }
  double beta() const { return beta_; }
  int sites() const { return sites_; }
  int local_dim() const { return local_dim_; }
  Eigen::Index dimension() const { return hamiltonian_.rows(); }
  bool translation_invariant() const { return translation_invariant_; }

  /// T with |TFD> = vec(T): sum_i w_i conj(v_i) v_i^T, w_i = exp(-beta E_i / 2) / sqrt(Z).
  const Matrix& state_matrix() const { return state_; }
  Vector state_vector() const { return vec(state_); }
  /// Tr_L |TFD><TFD| = exp(-beta H) / Z
  Matrix right_density() const;
  /// Tr_R |TFD><TFD| = conj(exp(-beta H)) / Z
  Matrix left_density() const;
  Matrix gibbs_density() const;
  /// <TFD| left (x) right |TFD>
  Complex two_sided(const Matrix& left, const Matrix& right) const;

 private:
  Matrix hamiltonian_;
  SpectralDecomposition spectrum_;
  double beta_;
  int sites_;
  int local_dim_;
  bool translation_invariant_;
  Matrix state_;
};

TfdModel build_tfd(const Matrix& hamiltonian, double beta, int sites, int local_dim = 2,
                   bool translation_invariant = false);

/**
 * traceless(K_M - K_N (x) 1) on the right copy, with K = -log of the reduced
 * density of each region, embedded on the whole chain. Throws DomainError
 * unless region_n lies in region_m, SingularityError if a reduced density is
 * not faithful.
 */
Matrix modular_momentum(const TfdModel& model, const SiteRange& region_m, const SiteRange& region_n);

struct CorrelatorSeries {
  std::vector<double> grid;
  std::vector<Complex> values;
  /// <O_L O_R>
  Complex static_correlator;
  /// Central difference with one Richardson step.
  Complex derivative_difference;
  /// -2i <O_L [P, O_R]>
  Complex derivative_commutator;
  double derivative_step = 0.0;
};

/// F(s) = <TFD| O_L (x) U(s) O_R U(s)^dagger |TFD> with U(s) = exp(-2isP).
Complex correlator_value(const TfdModel& model, const Matrix& op_left, const Matrix& op_right,
                         const SpectralDecomposition& momentum, double s);

CorrelatorSeries correlator_scan(const TfdModel& model, const Matrix& op_left, const Matrix& op_right,
                                 const Matrix& momentum, std::span<const double> grid,
                                 double step = 1e-4);

/// exp(2 pi i a k / L) summed over the momentum projectors of the cyclic shift, k in (-L/2, L/2].
Matrix fractional_translation(int sites, int local_dim, double shift);

/**
 * |<Ad U(s) O, Ad T^{2s} O>_HS| / ||O||^2 with T the one-site cyclic
 * translation. Throws DomainError on models that are not translation invariant.
 */
double translation_fidelity(const TfdModel& model, const Matrix& op_right, const Matrix& momentum, double s);

struct StabilityRow {
  double s = 0.0;
  double lhs = 0.0;        ///< max over samples of ||(R_{G(s)}(z) - R_{G(0)}(z)) xi||
  double kato_rhs = 0.0;   ///< ||G(s) - G(0)|| / |Im z|^2 (unit samples)
  double proj_dist = 0.0;  ///< ||e(s) - e(0)||
  double fit_cz = 0.0;     ///< lhs / proj_dist, 0 where proj_dist vanishes
};

struct StabilityReport {
  Complex z;
  double spectral_distance = 0.0;  ///< dist(z, spectrum of 2P)
  std::vector<StabilityRow> rows;
  std::size_t violations = 0;
  std::size_t checks = 0;
  double max_cz = 0.0;
};

/**
 * Kato-type resolvent probe along the generator family G(s) of a state path,
 * with unit sample vectors drawn from rng and e(s) the Path-A GNS operator
 * built from `projection`. Throws DomainError for real z and SingularityError
 * if z lies within 1e-6 of the spectrum of 2P.
 */
StabilityReport resolvent_stability(const StatePath& path, const Matrix& projection, Complex z,
                                    std::span<const double> grid, std::size_t samples, SeedStream& rng);

/// Least-squares slope through the origin of max C_z against 1 / dist(z, spectrum of 2P).
struct StabilityFit {
  double slope = 0.0;
  double r_squared = 0.0;
};

StabilityFit fit_stability(std::span<const StabilityReport> reports);

}  // namespace modlab
