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
 * GNS construction and the Tomita-Takesaki engine.
 *
 * For a unital *-subalgebra M of M_n and a faithful density rho, the GNS
 * space is the subspace [M Omega] of the Hilbert-Schmidt space with
 * Omega = rho^{1/2}. Operators on it are expressed in an orthonormal basis of
 * that subspace (the "GNS coordinates"); for M = M_n the basis is the
 * standard row-major vec basis, so superoperators are plain n^2 x n^2
 * matrices and Delta acts as x -> rho x rho^{-1}.
 */

#pragma once

#include <span>

#include "modlab/algebra.hpp"
#include "modlab/linalg.hpp"

namespace modlab {

/// Convention for the modular Hamiltonian: Delta = exp(-kappa K).
enum class HamiltonianScale { unit, two_pi };

double scale_factor(HamiltonianScale scale);

class GnsSpace {
 public:
  /// Throws DimensionError on size mismatch; the state is faithful by construction.
  GnsSpace(MatrixAlgebra algebra, StateDensity state);

  const MatrixAlgebra& algebra() const { return algebra_; }
  const StateDensity& state() const { return state_; }
  /// Omega = rho^{1/2} as an n x n matrix.
  const Matrix& omega() const { return omega_; }
  /// Isometry V (n^2 x d) from GNS coordinates into the vec space.
  const Matrix& embedding() const { return embedding_; }
  Eigen::Index dimension() const { return embedding_.cols(); }
  Eigen::Index ambient_dimension() const { return state_.dimension(); }
  /// True when [M Omega] is the whole Hilbert-Schmidt space and V = 1.
  bool is_full() const { return dimension() == ambient_dimension() * ambient_dimension(); }

  /// Omega in GNS coordinates.
  Vector vacuum() const { return vector_of(identity(ambient_dimension())); }
  /// x Omega in GNS coordinates.
  Vector vector_of(const Matrix& x) const;
  /// Left action of a on [M Omega], d x d.
  Matrix represent(const Matrix& a) const;
  /// { represent(b) : b in M } as an algebra on C^d.
  MatrixAlgebra represented_algebra() const;

  /// Smallest singular value of x -> x Omega on M; positive iff Omega is separating.
  double separating_margin() const;
  /// Numerical rank of span{x Omega : x in M}.
  Eigen::Index cyclic_rank() const;

 private:
  MatrixAlgebra algebra_;
  StateDensity state_;
  Matrix omega_;
  Matrix embedding_;
};

GnsSpace gns_build(const MatrixAlgebra& algebra, const StateDensity& state);

/// (S, J, Delta, K) on a GNS space, all in GNS coordinates.
struct ModularData {
  AntilinearOperator tomita;
  AntilinearOperator conjugation;
  Matrix delta;
  Matrix delta_root;
  SpectralDecomposition delta_spectrum;
  Matrix hamiltonian;
  HamiltonianScale scale = HamiltonianScale::unit;

  /// Delta^z through the spectrum of Delta.
  Matrix delta_power(Complex z) const { return complex_power(delta_spectrum, z); }
  /// Delta^{it} X Delta^{-it}
  Matrix flow(const Matrix& op, double t) const;
  /// Eigenvalues of K, ascending.
  RealVector hamiltonian_spectrum() const;
};

/**
 * Builds S from its definition x Omega -> x^dagger Omega on a basis of M,
 * polar-decomposes it and sets K = -log(Delta) / kappa. Delta and J do not
 * depend on the convention.
 */
ModularData tomita(const GnsSpace& gns, HamiltonianScale scale = HamiltonianScale::unit);

/// Residuals of the structural identities of the modular data.
struct ModularResiduals {
  double adjoint_reproduction = 0.0;  ///< max_b ||J Delta^{1/2} b Omega - b^dagger Omega||
  double tomita_involution = 0.0;     ///< ||S o S - 1||
  double conjugation_involution = 0.0;///< ||J o J - 1||
  double conjugation_unitarity = 0.0; ///< ||J^dagger J - 1|| (as a matrix)
  double delta_vs_hamiltonian = 0.0;  ///< ||Delta - exp(-kappa K)||
  double j_delta_j = 0.0;             ///< ||J Delta J - Delta^{-1}||
  double vacuum_delta = 0.0;          ///< ||Delta Omega - Omega||
  double vacuum_conjugation = 0.0;    ///< ||J Omega - Omega||
};

ModularResiduals modular_residuals(const GnsSpace& gns, const ModularData& data);

struct CommutationReport {
  /// span(J M J) vs span(M') inside B([M Omega]).
  double conjugation_residual = 0.0;
  /// max over the t-grid of dist(Delta^{it} b Delta^{-it}, M).
  double flow_residual = 0.0;
};

CommutationReport verify_commutation(const GnsSpace& gns, const ModularData& data, std::span<const double> times);

/**
 * sigma_z(b) = rho^{iz} b rho^{-iz}, analytically continued through the
 * spectrum of rho.
 */
Matrix modular_flow(const StateDensity& rho, const Matrix& b, Complex z);

/**
 * Analytic-continuation point of the KMS condition for the convention
 * sigma_z(b) = rho^{iz} b rho^{-iz}. Calibrated against the closed-form
 * identity Tr(rho a rho b rho^{-1}) = Tr(rho b a): z* = -i, where
 * sigma_{z*}(b) = rho b rho^{-1}. The opposite point +i does not satisfy it.
 */
inline constexpr Complex kKmsPoint{0.0, -1.0};

/// |omega(a sigma_z(b)) - omega(b a)| at an arbitrary continuation point.
double kms_residual_at(const StateDensity& rho, const Matrix& a, const Matrix& b, Complex z);
/// |omega(a sigma_{z*}(b)) - omega(b a)| at the calibrated point z* = kKmsPoint.
double kms_residual(const GnsSpace& gns, const Matrix& a, const Matrix& b);

}  // namespace modlab
