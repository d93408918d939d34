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
 * Dense complex linear algebra used by every other module: Hermitian
 * spectral calculus, Kronecker/partial-trace helpers, vectorization of the
 * Hilbert-Schmidt space and antilinear operators.
 *
 * Vectorization is row-major throughout: the n x n matrix x is stored as
 * vec(x)[i*n + j] = x(i, j). With that convention
 *
 *     vec(a x b) = (a (x) b^T) vec(x),
 *
 * so left multiplication by a is kron(a, 1) and right multiplication by b is
 * kron(1, b^T). Tr(x^dagger y) is the Euclidean inner product of vec(x), vec(y).
 */

#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace modlab {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr Complex kI{0.0, 1.0};

/// Eigen-decomposition H = V diag(lambda) V^dagger of a Hermitian matrix.
struct SpectralDecomposition {
  RealVector eigenvalues;  ///< ascending
  Matrix eigenvectors;     ///< unitary, one eigenvector per column

  Matrix reconstruct() const;
  /// V diag(f(lambda)) V^dagger.
  Matrix apply(const std::function<Complex(double)>& f) const;
  double min_eigenvalue() const { return eigenvalues(0); }
  double max_eigenvalue() const { return eigenvalues(eigenvalues.size() - 1); }
};

/// max_ij |h_ij - conj(h_ji)|
double hermitian_defect(const Matrix& h);

/// (h + h^dagger) / 2
Matrix hermitian_part(const Matrix& h);

/**
 * Deterministic Hermitian eigensolver.
 *
 * Rejects inputs whose asymmetry exceeds 1e-12 * max(1, ||H||_F) with
 * NonHermitianError; otherwise symmetrizes. Eigenvector phases are fixed so
 * that the largest-modulus component of each column (lowest index on ties) is
 * real and positive, which makes the output a pure function of the input.
 */
SpectralDecomposition spectral_decompose(const Matrix& h);

/// Scalar function applied through the spectrum of a positive or Hermitian matrix.
struct MatrixFunction {
  enum class Kind { log, power, exp };
  Kind kind = Kind::exp;
  double exponent = 1.0;

  static MatrixFunction log() { return {Kind::log, 0.0}; }
  static MatrixFunction power(double alpha) { return {Kind::power, alpha}; }
  static MatrixFunction exp() { return {Kind::exp, 0.0}; }
};

/**
 * f(H) for f in {log, power(alpha), exp}.
 *
 * log and power with alpha < 1 require every eigenvalue above the 1e-12
 * floor and throw SingularityError naming the offending eigenvalue
 * otherwise. power(0) and power(1) return the identity and (the symmetrized)
 * H without going through the spectrum.
 */
Matrix matrix_function(const Matrix& h, MatrixFunction f);
Matrix matrix_function(const SpectralDecomposition& spectrum, MatrixFunction f);

/// exp(-i t H) for Hermitian H.
Matrix unitary_exp(const Matrix& h, double t);
Matrix unitary_exp(const SpectralDecomposition& spectrum, double t);

/// H^z = exp(z log H) for positive definite H and complex z (e.g. rho^{it}).
Matrix complex_power(const SpectralDecomposition& spectrum, Complex z);

Matrix identity(Eigen::Index n);
Matrix kron(const Matrix& a, const Matrix& b);
Matrix commutator(const Matrix& a, const Matrix& b);
/// x - Tr(x)/n * 1
Matrix traceless(const Matrix& x);
/// Largest singular value.
double operator_norm(const Matrix& x);
/// min over theta of ||a - e^{i theta} b||_F.
double phase_distance(const Matrix& a, const Matrix& b);

Vector vec(const Matrix& x);
Matrix unvec(const Vector& v, Eigen::Index n);
/// Superoperator x -> a x in the row-major vec basis.
Matrix left_multiplication(const Matrix& a);
/// Superoperator x -> x b in the row-major vec basis.
Matrix right_multiplication(const Matrix& b);

/**
 * Partial trace over a tensor factorization.
 *
 * `dims` lists the local dimensions (factor 0 is the most significant index),
 * `keep` the factors to retain in increasing order. Throws DimensionError when
 * the product of dims differs from the matrix size.
 */
Matrix partial_trace(const Matrix& rho, std::span<const int> dims, std::span<const int> keep);

/**
 * Embeds an operator acting on the listed tensor factors of a homogeneous
 * product space (num_factors factors of dimension local_dim) by tensoring the
 * identity on the rest. `factors` must be strictly increasing.
 */
Matrix embed_operator(const Matrix& op, std::span<const int> factors, int num_factors, int local_dim);

/**
 * Antilinear operator v -> A conj(v), stored as the single matrix A.
 *
 * Composition rules (B, L linear matrices):
 *   (A o B)v  = A conj(B conj v) = (A conj(B)) v          -> linear, A * conj(B)
 *   (A o L)v  = A conj(L v)     = (A conj(L)) conj(v)     -> antilinear, A * conj(L)
 *   (L o A)v  = L A conj(v)                              -> antilinear, L * A
 * The adjoint, defined by <u, A v> = conj(<A* u, v>), has matrix A^T.
 */
class AntilinearOperator {
 public:
  AntilinearOperator() = default;
  explicit AntilinearOperator(Matrix a);

  /// Complex conjugation on C^n.
  static AntilinearOperator conjugation(Eigen::Index n);

  Vector apply(const Vector& v) const { return matrix_ * v.conjugate(); }
  const Matrix& matrix() const { return matrix_; }
  Eigen::Index dimension() const { return matrix_.rows(); }

  /// this o other, a linear operator.
  Matrix then_after(const AntilinearOperator& other) const;
  /// this o linear
  AntilinearOperator after_linear(const Matrix& linear) const;
  /// linear o this
  AntilinearOperator before_linear(const Matrix& linear) const;
  AntilinearOperator adjoint() const;
  /// J X J for linear X, itself linear: A conj(X) conj(A).
  Matrix conjugate_linear(const Matrix& x) const;

 private:
  Matrix matrix_;
};

/// S = J o Delta^{1/2} with J antiunitary and Delta^{1/2} positive.
struct AntilinearPolar {
  AntilinearOperator conjugation;  ///< J
  Matrix positive_root;            ///< Delta^{1/2} = (S* S)^{1/2}
  Matrix positive;                 ///< Delta = S* S = A^T conj(A)
};

/**
 * Polar decomposition of an invertible antilinear operator.
 *
 * S* S is the linear operator with matrix A^T conj(A); its square root is
 * taken spectrally and J = A conj(Delta^{-1/2}). Throws SingularityError with
 * the null direction in the message if S* S has an eigenvalue below 1e-12.
 */
AntilinearPolar polar_decompose_antilinear(const AntilinearOperator& s);

}  // namespace modlab
