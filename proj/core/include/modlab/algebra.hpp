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
 * Finite-dimensional von Neumann algebras as explicit *-subalgebras of M_n:
 * spans, commutants, states, superoperators and conditional expectations.
 */

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "modlab/linalg.hpp"

namespace modlab {

/**
 * Subspace of M_n with a Hilbert-Schmidt orthonormal basis.
 *
 * Membership tests are orthogonal projections. No algebraic closure is
 * assumed; MatrixAlgebra adds that invariant.
 */
class OperatorSpan {
 public:
  explicit OperatorSpan(Eigen::Index n = 0) : n_(n), cols_(n * n, 0) {}

  /// Gram-Schmidt over the inputs in order, dropping directions below the rank threshold.
  static OperatorSpan from_spanning_set(Eigen::Index n, const std::vector<Matrix>& elements);
  /**
   * Span of the orthonormal columns of `columns` (vectors in the row-major
   * vec space), re-expressed in the basis obtained by projecting the matrix
   * units E_ij in lexicographic order. Gives readable bases (E_11, E_22, ...)
   * whenever the subspace contains them.
   */
  static OperatorSpan from_vec_columns(Eigen::Index n, const Matrix& columns);

  /**
   * Appends x if it is independent of the current span; returns whether it
   * grew. The residual is compared with max(||x||, reference), so elements
   * that should vanish (products of orthogonal pieces, say) are not promoted
   * from roundoff.
   */
  bool try_add(const Matrix& x, double reference = 0.0);

  Eigen::Index ambient_dimension() const { return n_; }
  Eigen::Index dimension() const { return static_cast<Eigen::Index>(basis_.size()); }
  const std::vector<Matrix>& basis() const { return basis_; }
  /// n^2 x k matrix whose columns are vec(basis element).
  const Matrix& columns() const { return cols_; }
  /// n^2 x n^2 orthogonal projector onto the span.
  Matrix projector() const;

  Matrix project(const Matrix& x) const;
  double distance(const Matrix& x) const;
  bool contains(const Matrix& x, double tolerance) const;

 private:
  void push(const Vector& unit);

  Eigen::Index n_;
  std::vector<Matrix> basis_;
  Matrix cols_;
};

/// max distance of a basis element of `inner` from `outer`.
double inclusion_residual(const OperatorSpan& inner, const OperatorSpan& outer);
/// max of both inclusion residuals; infinity on ambient-dimension mismatch.
double span_equality_residual(const OperatorSpan& a, const OperatorSpan& b);
/// Intersection of two spans: null space of (1 - P_a) + (1 - P_b).
OperatorSpan intersect(const OperatorSpan& a, const OperatorSpan& b);

/// Residuals of the MatrixAlgebra invariants.
struct AlgebraResiduals {
  double gram = 0.0;     ///< ||B^dagger B - 1||_max
  double adjoint = 0.0;  ///< max_i dist(b_i^dagger, span)
  double closure = 0.0;  ///< max_ij dist(b_i b_j, span)
  double unit = 0.0;     ///< dist(1, span)
  double max() const;
};

/**
 * Unital *-subalgebra of M_n with an orthonormal basis.
 *
 * Construction validates orthonormality, closure under adjoint and product,
 * and the presence of the unit, all to 1e-10; violations throw
 * StructureError.
 */
class MatrixAlgebra {
 public:
  static MatrixAlgebra from_spanning_set(Eigen::Index n, const std::vector<Matrix>& elements);
  static MatrixAlgebra from_span(OperatorSpan span);
  /// Smallest unital *-algebra containing the generators (product closure to a fixed point).
  static MatrixAlgebra generated_by(Eigen::Index n, const std::vector<Matrix>& generators);

  static MatrixAlgebra full(Eigen::Index n);
  static MatrixAlgebra scalars(Eigen::Index n);
  static MatrixAlgebra diagonal(Eigen::Index n);
  /// Block-diagonal algebra M_{k1} (+) M_{k2} (+) ... acting on C^{sum k}.
  static MatrixAlgebra block_diagonal(const std::vector<Eigen::Index>& blocks);
  /// M_a (x) 1_b inside M_{ab}.
  static MatrixAlgebra left_factor(Eigen::Index a, Eigen::Index b);
  /// 1_a (x) M_b inside M_{ab}.
  static MatrixAlgebra right_factor(Eigen::Index a, Eigen::Index b);
  /// u A u^dagger
  MatrixAlgebra conjugated(const Matrix& u) const;

  Eigen::Index ambient_dimension() const { return span_.ambient_dimension(); }
  Eigen::Index dimension() const { return span_.dimension(); }
  const std::vector<Matrix>& basis() const { return span_.basis(); }
  const OperatorSpan& span() const { return span_; }

  Matrix project(const Matrix& x) const { return span_.project(x); }
  double distance(const Matrix& x) const { return span_.distance(x); }
  bool contains(const Matrix& x, double tolerance = 1e-10) const { return span_.contains(x, tolerance); }

  AlgebraResiduals residuals() const;

 private:
  explicit MatrixAlgebra(OperatorSpan span) : span_(std::move(span)) {}
  OperatorSpan span_;
};

/// { x : [x, a] = 0 for all a in A }, from the null space of the stacked commutator map.
MatrixAlgebra commutant(const MatrixAlgebra& a);
MatrixAlgebra center(const MatrixAlgebra& a);
/// residual of span(inner) subset span(outer)
inline double inclusion_residual(const MatrixAlgebra& inner, const MatrixAlgebra& outer) {
  return inclusion_residual(inner.span(), outer.span());
}

/// Faithful density matrix: Hermitian, unit trace, smallest eigenvalue above 1e-12.
class StateDensity {
 public:
  /// Validates; throws NonHermitianError, StructureError (trace) or SingularityError (not faithful).
  explicit StateDensity(const Matrix& rho);

  static StateDensity tracial(Eigen::Index n);
  static StateDensity diagonal(const std::vector<double>& probabilities);

  const Matrix& matrix() const { return rho_; }
  Eigen::Index dimension() const { return rho_.rows(); }
  const SpectralDecomposition& spectrum() const { return spectrum_; }
  /// Smallest eigenvalue; the faithfulness margin.
  double margin() const { return spectrum_.min_eigenvalue(); }
  /// omega(a) = Tr(rho a)
  Complex expectation(const Matrix& a) const;
  Matrix log() const;
  Matrix power(double alpha) const;

 private:
  Matrix rho_;
  SpectralDecomposition spectrum_;
};

/// Linear map on M_n stored as an n^2 x n^2 matrix acting on row-major vec.
class Superoperator {
 public:
  Superoperator() = default;
  Superoperator(Eigen::Index n, Matrix m);

  static Superoperator identity(Eigen::Index n);
  template <class F>
  static Superoperator from_function(Eigen::Index n, F&& f) {
    Matrix m(n * n, n * n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) {
        Matrix unit = Matrix::Zero(n, n);
        unit(i, j) = 1.0;
        m.col(i * n + j) = vec(f(unit));
      }
    return Superoperator(n, std::move(m));
  }

  Eigen::Index dimension() const { return n_; }
  const Matrix& matrix() const { return m_; }
  Matrix operator()(const Matrix& x) const { return unvec(m_ * vec(x), n_); }
  /// (this o other)(x) = this(other(x))
  Superoperator after(const Superoperator& other) const;
  /// Choi matrix sum_ij E_ij (x) T(E_ij).
  Matrix choi() const;
  double choi_min_eigenvalue() const;

  friend Superoperator operator+(const Superoperator& a, const Superoperator& b);
  friend Superoperator operator*(double c, const Superoperator& a);

 private:
  Eigen::Index n_ = 0;
  Matrix m_;
};

/// Hilbert-Schmidt orthogonal projection onto a unital subalgebra; trace preserving.
Superoperator trace_expectation(const MatrixAlgebra& sub);
Matrix trace_expectation(const MatrixAlgebra& sub, const Matrix& x);

struct TakesakiResult {
  bool invariant = false;
  /// max_i dist([log rho, n_i], span N)
  double residual = 0.0;
};

/**
 * Lie-algebra form of the Takesaki criterion: the modular flow of rho leaves
 * N invariant iff ad_{log rho} maps N into itself. Threshold 1e-10 scaled by
 * max(1, ||log rho||_F).
 */
TakesakiResult takesaki_check(const MatrixAlgebra& sub, const StateDensity& rho);

/**
 * The map E_omega determined by E_omega(x) Omega = e_N (x Omega), with
 * Omega = rho^{1/2} and e_N the projection onto [N Omega]. Always unital,
 * idempotent and omega-preserving; positivity and the bimodule property hold
 * exactly when the Takesaki criterion does. Failing diagnostics are returned,
 * not thrown.
 */
struct OmegaExpectation {
  Superoperator map;
  double idempotency = 0.0;         ///< ||E^2 - E||
  double choi_min_eigenvalue = 0.0; ///< of E composed with the trace expectation onto M
  double omega_preservation = 0.0;  ///< max over M basis |omega(E x) - omega(x)|
  double bimodule = 0.0;            ///< max ||E(a x b) - a E(x) b||_F, a,b in N, x in M
  double unitality = 0.0;
  bool passes(double tolerance = 1e-10) const;
};

OmegaExpectation omega_expectation(const MatrixAlgebra& sub, const MatrixAlgebra& larger, const StateDensity& rho);

/// One hypothesis or conclusion of the idempotent-CP-map theorem.
struct TomiyamaItem {
  std::string name;
  double residual = 0.0;
  bool passed = false;
};

struct TomiyamaReport {
  std::vector<TomiyamaItem> hypotheses;   ///< unital, cp, idempotent, omega_preserving
  std::vector<TomiyamaItem> conclusions;  ///< range_is_algebra, bimodule (only when hypotheses pass)
  bool hypotheses_hold() const;
  bool conclusions_hold() const;
  /// Hypotheses fail, or hypotheses and conclusions both hold.
  bool consistent() const { return !hypotheses_hold() || conclusions_hold(); }
  const TomiyamaItem* find(const std::string& name) const;
};

TomiyamaReport verify_tomiyama(const Superoperator& map, const StateDensity& rho, double tolerance = 1e-10);

}  // namespace modlab
