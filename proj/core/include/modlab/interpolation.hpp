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
 * Interpolating between the identity and a conditional expectation.
 *
 * Path A is the convex family E_s = (1-s) id + s E of completely positive
 * maps; it is not idempotent inside (0,1). Path B interpolates states
 * instead: rho_s runs from rho_0 to rho_1 = E_tr(rho_0) either log-linearly
 * or along the geometric mean, and the path Hamiltonian K(s) = -log(rho_s)
 * generates G(s) = -2 K'(s). Filtrations A_0 > A_1 > ... > A_m give discrete
 * families of genuine expectations that do absorb each other.
 */

#pragma once

#include <span>
#include <vector>

#include "modlab/algebra.hpp"
#include "modlab/modular.hpp"

namespace modlab {

// Path A

struct CpPathPoint {
  double s = 0.0;
  Superoperator map;
  Matrix choi;
  double choi_min_eigenvalue = 0.0;
};

/// E_s = (1-s) id + s E; throws DomainError unless 0 <= s <= 1.
CpPathPoint patha_map(const Superoperator& expectation, double s);

/// ||E_s o E_s - E_s|| in the operator norm of the vec representation, by composition.
double patha_defect(const Superoperator& expectation, double s);
/// s(1-s) ||id - E||, equal to patha_defect for idempotent E.
double patha_defect_closed_form(const Superoperator& expectation, double s);

/// e(s) = (1-s) 1 + s e_N on the GNS space; throws DomainError unless 0 <= s <= 1.
Matrix patha_gns_operator(const Matrix& projection, double s);

/// omega(a^dagger a) - omega(E_s(a)^dagger E_s(a)); nonnegative for unital CP maps.
double kadison_schwarz_residual(const CpPathPoint& point, const StateDensity& rho, const Matrix& a);

/// ||T(1) - 1||_F
double unitality_residual(const Superoperator& map);
/// max over matrix units x of |omega(T(x)) - omega(x)|
double omega_preservation_residual(const Superoperator& map, const StateDensity& rho);

// Path B

/// Radon-Nikodym data of rho_1 relative to rho_0.
struct RnData {
  StateDensity rho0;
  StateDensity rho1;
  /// h = rho_0^{-1/2} rho_1 rho_0^{-1/2}
  Matrix derivative;
  /// u_t = rho_1^{it} rho_0^{-it}
  Matrix cocycle(double t) const;
};

RnData rn_data(const StateDensity& rho0, const StateDensity& rho1);

enum class PathKind { log_linear, geodesic };

class StatePath {
 public:
  StatePath(StateDensity rho0, StateDensity rho1, PathKind kind);
  /// Path from rho0 to its trace-preserving expectation onto sub.
  static StatePath toward_subalgebra(const StateDensity& rho0, const MatrixAlgebra& sub, PathKind kind);

  PathKind kind() const { return kind_; }
  const RnData& rn() const { return rn_; }
  const StateDensity& start() const { return rn_.rho0; }
  const StateDensity& end() const { return rn_.rho1; }

  /// rho_s, exact at the endpoints; throws DomainError unless 0 <= s <= 1.
  StateDensity at(double s) const;
  /// Normalized rho_s for any real s, used for finite differences across the endpoints.
  Matrix density(double s) const;

  /// Modular momentum traceless((log rho_1 - log rho_0) / kappa).
  Matrix momentum(HamiltonianScale scale = HamiltonianScale::unit) const;

 private:
  RnData rn_;
  PathKind kind_;
  Matrix log0_;
  Matrix log1_;
  Matrix root0_;
  SpectralDecomposition derivative_spectrum_;
};

struct PathHamiltonian {
  Matrix hamiltonian;  ///< K(s) = -log(rho_s) / kappa
  Matrix derivative;   ///< K'(s): closed form for log-linear, central difference for geodesic
};

PathHamiltonian path_hamiltonian(const StatePath& path, double s, HamiltonianScale scale = HamiltonianScale::unit);

/// Central difference (K(s+h) - K(s-h)) / 2h.
Matrix path_hamiltonian_difference(const StatePath& path, double s, double step,
                                   HamiltonianScale scale = HamiltonianScale::unit);

/// G(s) = -2 traceless(K'(s)).
Matrix path_generator(const StatePath& path, double s, HamiltonianScale scale = HamiltonianScale::unit);

/**
 * max over t of the distance, modulo a global phase, between the cocycle of
 * rho_s relative to rho_0 at time t and u_{st}. Vanishes when the endpoints
 * commute.
 */
double cocycle_scaling_residual(const StatePath& path, double s, std::span<const double> times);

/// ||rho_s(log-linear) - rho_s(geodesic)||_F
double kind_distance(const StateDensity& rho0, const StateDensity& rho1, double s);

// Filtrations

class Filtration {
 public:
  /// chain[0] > chain[1] > ...; throws StructureError if the spans are not nested.
  explicit Filtration(std::vector<MatrixAlgebra> chain);

  const std::vector<MatrixAlgebra>& chain() const { return chain_; }
  std::size_t size() const { return chain_.size(); }

 private:
  std::vector<MatrixAlgebra> chain_;
};

struct FiltrationReport {
  double absorption = 0.0;    ///< max_{k' >= k} ||E_k' o E_k - E_k'||
  double nesting = 0.0;       ///< max_k of the inclusion residual of A_{k+1} in A_k, and ||E_k o E_k' - E_k'||
  double monotonicity = 0.0;  ///< max_{k' >= k} ||e_k e_k' - e_k'||
  double boundary = 0.0;      ///< ||E_0 - id||
  /// Absorption with E_k replaced by (1 - k/m) id + (k/m) E_m.
  double patha_absorption = 0.0;
  bool passes(double tolerance = 1e-10) const;
};

/// Expectations are the omega-expectations of rho onto each A_k inside A_0.
FiltrationReport filtration_check(const Filtration& filtration, const StateDensity& rho);

}  // namespace modlab
