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
 * Jones basic construction for an inclusion N in M of matrix algebras with a
 * faithful state: the Jones projection e_N, the basic extension
 * M_1 = <M, e_N>, relative commutants and the canonical shift U = J_M J_N.
 *
 * Everything acts on the GNS space of M (see modular.hpp). Since Omega is
 * never cyclic for a proper subalgebra in finite dimensions, J_N only exists
 * on [N Omega]; extended_conjugation() fixes the convention used beyond it.
 */

#pragma once

#include <optional>
#include <vector>

#include "modlab/algebra.hpp"
#include "modlab/modular.hpp"

namespace modlab {

enum class ExpectationKind { trace, omega };

class Inclusion {
 public:
  /// Throws StructureError unless span(N) lies in span(M) to 1e-10 and both are unital.
  Inclusion(MatrixAlgebra larger, MatrixAlgebra smaller, StateDensity state,
            ExpectationKind kind = ExpectationKind::omega);

  const MatrixAlgebra& larger() const { return larger_; }
  const MatrixAlgebra& smaller() const { return smaller_; }
  const StateDensity& state() const { return state_; }
  ExpectationKind kind() const { return kind_; }
  /// The expectation M -> N selected by kind(), as a map on M_n.
  const Superoperator& expectation() const { return expectation_; }
  /// ||span(N) - P_M span(N)||, the inclusion residual.
  double inclusion_residual() const;

 private:
  MatrixAlgebra larger_;
  MatrixAlgebra smaller_;
  StateDensity state_;
  ExpectationKind kind_;
  Superoperator expectation_;
};

/// Orthonormal columns spanning [N Omega] in the GNS coordinates of gns.
Matrix cyclic_subspace(const GnsSpace& gns, const MatrixAlgebra& sub);

/// Orthogonal projection onto [N Omega].
Matrix jones_projection(const Inclusion& inc, const GnsSpace& gns);

/// max over a in the basis of M of ||e_N L(a) e_N - L(E(a)) e_N||.
double jones_identity_residual(const Inclusion& inc, const GnsSpace& gns, const Matrix& projection);
/// max over n in the basis of N of ||[e_N, L(n)]||.
double jones_commutation_residual(const Inclusion& inc, const GnsSpace& gns, const Matrix& projection);

struct BasicExtension {
  MatrixAlgebra algebra;  ///< M_1 on the GNS space
  Matrix projection;      ///< e_N
  /// span(M_1) vs span(J_M N' J_M).
  double commutant_residual = 0.0;
  /// Containment of L(M) in M_1.
  double contains_larger = 0.0;
};

/// Throws StructureError if the product closure does not converge.
BasicExtension basic_extension(const Inclusion& inc, const GnsSpace& gns, const ModularData& modular);

/// A' intersected with B, for algebras on the same space.
MatrixAlgebra relative_commutant(const MatrixAlgebra& a, const MatrixAlgebra& b);

/**
 * Index from E(e_N) = lambda 1, with E the trace-preserving expectation of
 * B(GNS) onto L(M): returns 1/lambda, or nothing if E(e_N) is not scalar.
 * C in M_2 gives 4, diag in M_2 gives 2.
 */
std::optional<double> index_estimate(const GnsSpace& gns, const Matrix& projection);

/**
 * J_N extended to the whole GNS space: the modular conjugation of the
 * restricted Tomita map n Omega -> n^dagger Omega on [N Omega], direct sum
 * with J_M restricted to the orthocomplement. Reduces to J_M at N = M.
 */
AntilinearOperator extended_conjugation(const GnsSpace& gns, const MatrixAlgebra& sub, const ModularData& modular);

struct CanonicalShift {
  Matrix unitary;                            ///< J_M o extended J_N
  AntilinearOperator extended_conjugation;
  double unitarity_residual = 0.0;           ///< ||U^dagger U - 1||
  /// Per basis element x of N' cap M: dist(U L(x) U^dagger, M' cap M_1).
  std::vector<double> transport_distances;
  double max_transport() const;
};

CanonicalShift canonical_shift(const Inclusion& inc, const GnsSpace& gns, const ModularData& modular,
                               const BasicExtension& extension);

}  // namespace modlab
