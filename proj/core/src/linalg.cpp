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

#include "modlab/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "modlab/errors.hpp"
#include "modlab/tolerances.hpp"

namespace modlab {

namespace {

void require_square(const Matrix& m, const char* who) {
  if (m.rows() != m.cols()) {
    std::ostringstream os;
    os << who << ": expected a square matrix, got " << m.rows() << "x" << m.cols();
    throw DimensionError(os.str());
  }
}

// Largest-modulus component real positive; first index wins ties.
void fix_phases(Matrix& v) {
  for (Eigen::Index c = 0; c < v.cols(); ++c) {
    Eigen::Index best = 0;
    double best_abs = -1.0;
    for (Eigen::Index r = 0; r < v.rows(); ++r) {
      const double a = std::abs(v(r, c));
      if (a > best_abs * (1.0 + 1e-12)) {
        best_abs = a;
        best = r;
      }
    }
    if (best_abs > 0.0) {
      const Complex phase = std::conj(v(best, c)) / best_abs;
      v.col(c) *= phase;
    }
  }
}

double floor_checked_log(double lambda) {
  if (lambda <= tol::eigenvalue_floor) {
    std::ostringstream os;
    os << "matrix_function: eigenvalue " << lambda << " is below the faithfulness floor "
       << tol::eigenvalue_floor;
    throw SingularityError(os.str(), lambda);
  }
  return std::log(lambda);
}

}  // namespace

Matrix SpectralDecomposition::reconstruct() const {
  return eigenvectors * eigenvalues.cast<Complex>().asDiagonal() * eigenvectors.adjoint();
}

Matrix SpectralDecomposition::apply(const std::function<Complex(double)>& f) const {
  Vector values(eigenvalues.size());
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) values(i) = f(eigenvalues(i));
  return eigenvectors * values.asDiagonal() * eigenvectors.adjoint();
}

double hermitian_defect(const Matrix& h) {
  if (h.rows() != h.cols()) return std::numeric_limits<double>::infinity();
  return (h - h.adjoint()).cwiseAbs().maxCoeff();
}

Matrix hermitian_part(const Matrix& h) { return 0.5 * (h + h.adjoint()); }

SpectralDecomposition spectral_decompose(const Matrix& h) {
  require_square(h, "spectral_decompose");
  if (h.size() == 0) return {RealVector(), Matrix()};
  const double defect = hermitian_defect(h);
  const double scale = std::max(1.0, h.norm());
  if (!(defect <= tol::hermitian * scale)) {
    std::ostringstream os;
    os << "spectral_decompose: matrix is not Hermitian (max asymmetry " << defect << ")";
    throw NonHermitianError(os.str(), defect);
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian_part(h));
  if (solver.info() != Eigen::Success) throw Error("spectral_decompose: eigensolver did not converge");
  SpectralDecomposition out{solver.eigenvalues(), solver.eigenvectors()};
  fix_phases(out.eigenvectors);
  return out;
}

Matrix matrix_function(const SpectralDecomposition& spectrum, MatrixFunction f) {
  switch (f.kind) {
    case MatrixFunction::Kind::log:
      return spectrum.apply([](double x) { return Complex(floor_checked_log(x), 0.0); });
    case MatrixFunction::Kind::exp:
      return spectrum.apply([](double x) { return Complex(std::exp(x), 0.0); });
    case MatrixFunction::Kind::power: {
      const double alpha = f.exponent;
      if (alpha < 1.0) {
        for (Eigen::Index i = 0; i < spectrum.eigenvalues.size(); ++i)
          floor_checked_log(spectrum.eigenvalues(i));
      } else if (spectrum.eigenvalues.size() > 0 && spectrum.min_eigenvalue() < 0.0) {
        std::ostringstream os;
        os << "matrix_function: power of a matrix with negative eigenvalue "
           << spectrum.min_eigenvalue();
        throw SingularityError(os.str(), spectrum.min_eigenvalue());
      }
      return spectrum.apply([alpha](double x) { return Complex(std::pow(x, alpha), 0.0); });
    }
  }
  return {};
}

Matrix matrix_function(const Matrix& h, MatrixFunction f) {
  require_square(h, "matrix_function");
  if (f.kind == MatrixFunction::Kind::power && (f.exponent == 0.0 || f.exponent == 1.0)) {
    const auto spectrum = spectral_decompose(h);
    // Run the floor / sign checks even on the short-circuit path.
    matrix_function(spectrum, MatrixFunction::power(f.exponent == 0.0 ? 0.5 : 2.0));
    return f.exponent == 0.0 ? identity(h.rows()) : hermitian_part(h);
  }
  return matrix_function(spectral_decompose(h), f);
}

Matrix unitary_exp(const SpectralDecomposition& spectrum, double t) {
  return spectrum.apply([t](double x) { return std::exp(-kI * (t * x)); });
}

Matrix unitary_exp(const Matrix& h, double t) { return unitary_exp(spectral_decompose(h), t); }

Matrix complex_power(const SpectralDecomposition& spectrum, Complex z) {
  return spectrum.apply([z](double x) { return std::exp(z * floor_checked_log(x)); });
}

Matrix identity(Eigen::Index n) { return Matrix::Identity(n, n); }

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

Matrix traceless(const Matrix& x) {
  require_square(x, "traceless");
  if (x.rows() == 0) return x;
  return x - (x.trace() / static_cast<double>(x.rows())) * identity(x.rows());
}

double operator_norm(const Matrix& x) {
  if (x.size() == 0) return 0.0;
  // Largest eigenvalue of x^dagger x; accurate at the top of the spectrum.
  const Matrix gram = x.cols() <= x.rows() ? Matrix(x.adjoint() * x) : Matrix(x * x.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(gram, Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, solver.eigenvalues()(gram.rows() - 1)));
}

double phase_distance(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionError("phase_distance: shape mismatch");
  // Align b to a by the phase of <b, a>, then measure directly.
  const Complex overlap = (b.adjoint() * a).trace();
  const Complex phase = std::abs(overlap) > 0.0 ? overlap / std::abs(overlap) : Complex(1.0, 0.0);
  return (a - phase * b).norm();
}

Vector vec(const Matrix& x) {
  Vector v(x.size());
  for (Eigen::Index i = 0; i < x.rows(); ++i)
    for (Eigen::Index j = 0; j < x.cols(); ++j) v(i * x.cols() + j) = x(i, j);
  return v;
}

Matrix unvec(const Vector& v, Eigen::Index n) {
  if (v.size() != n * n) throw DimensionError("unvec: vector length is not n^2");
  Matrix x(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) x(i, j) = v(i * n + j);
  return x;
}

Matrix left_multiplication(const Matrix& a) {
  require_square(a, "left_multiplication");
  return kron(a, identity(a.rows()));
}

Matrix right_multiplication(const Matrix& b) {
  require_square(b, "right_multiplication");
  return kron(identity(b.rows()), b.transpose());
}

namespace {

std::vector<Eigen::Index> strides_of(std::span<const int> dims) {
  std::vector<Eigen::Index> strides(dims.size(), 1);
  for (int k = static_cast<int>(dims.size()) - 2; k >= 0; --k) strides[k] = strides[k + 1] * dims[k + 1];
  return strides;
}

}  // namespace

Matrix partial_trace(const Matrix& rho, std::span<const int> dims, std::span<const int> keep) {
  require_square(rho, "partial_trace");
  Eigen::Index total = 1;
  for (int d : dims) {
    if (d <= 0) throw DimensionError("partial_trace: non-positive factor dimension");
    total *= d;
  }
  if (total != rho.rows()) {
    std::ostringstream os;
    os << "partial_trace: factor dimensions multiply to " << total << " but matrix is " << rho.rows();
    throw DimensionError(os.str());
  }
  std::vector<bool> kept(dims.size(), false);
  for (std::size_t i = 0; i < keep.size(); ++i) {
    if (keep[i] < 0 || keep[i] >= static_cast<int>(dims.size()) || (i > 0 && keep[i] <= keep[i - 1]))
      throw DimensionError("partial_trace: kept factors must be strictly increasing and in range");
    kept[keep[i]] = true;
  }
  std::vector<int> traced;
  for (int k = 0; k < static_cast<int>(dims.size()); ++k)
    if (!kept[k]) traced.push_back(k);

  const auto strides = strides_of(dims);
  auto offsets = [&](const std::vector<int>& factors) {
    Eigen::Index count = 1;
    for (int f : factors) count *= dims[f];
    std::vector<Eigen::Index> out(count, 0);
    for (Eigen::Index idx = 0; idx < count; ++idx) {
      Eigen::Index rem = idx, off = 0;
      for (int k = static_cast<int>(factors.size()) - 1; k >= 0; --k) {
        off += (rem % dims[factors[k]]) * strides[factors[k]];
        rem /= dims[factors[k]];
      }
      out[idx] = off;
    }
    return out;
  };
  const auto keep_off = offsets(std::vector<int>(keep.begin(), keep.end()));
  const auto trace_off = offsets(traced);

  const auto m = static_cast<Eigen::Index>(keep_off.size());
  Matrix out = Matrix::Zero(m, m);
  for (Eigen::Index a = 0; a < m; ++a)
    for (Eigen::Index b = 0; b < m; ++b) {
      Complex acc = 0.0;
      for (Eigen::Index r : trace_off) acc += rho(keep_off[a] + r, keep_off[b] + r);
      out(a, b) = acc;
    }
  return out;
}

Matrix embed_operator(const Matrix& op, std::span<const int> factors, int num_factors, int local_dim) {
  require_square(op, "embed_operator");
  Eigen::Index sub = 1;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (factors[i] < 0 || factors[i] >= num_factors || (i > 0 && factors[i] <= factors[i - 1]))
      throw DimensionError("embed_operator: factors must be strictly increasing and in range");
    sub *= local_dim;
  }
  if (sub != op.rows()) throw DimensionError("embed_operator: operator size does not match factor count");
  Eigen::Index total = 1;
  for (int k = 0; k < num_factors; ++k) total *= local_dim;

  std::vector<bool> in_sub(num_factors, false);
  for (int f : factors) in_sub[f] = true;
  // Split a full index into (sub index, rest index).
  auto split = [&](Eigen::Index idx) {
    Eigen::Index s = 0, r = 0;
    Eigen::Index digit_base = total;
    for (int k = 0; k < num_factors; ++k) {
      digit_base /= local_dim;
      const Eigen::Index digit = (idx / digit_base) % local_dim;
      if (in_sub[k]) s = s * local_dim + digit;
      else r = r * local_dim + digit;
    }
    return std::pair{s, r};
  };
  std::vector<std::pair<Eigen::Index, Eigen::Index>> parts(total);
  for (Eigen::Index i = 0; i < total; ++i) parts[i] = split(i);

  Matrix out = Matrix::Zero(total, total);
  for (Eigen::Index i = 0; i < total; ++i)
    for (Eigen::Index j = 0; j < total; ++j)
      if (parts[i].second == parts[j].second) out(i, j) = op(parts[i].first, parts[j].first);
  return out;
}

AntilinearOperator::AntilinearOperator(Matrix a) : matrix_(std::move(a)) {
  require_square(matrix_, "AntilinearOperator");
}

AntilinearOperator AntilinearOperator::conjugation(Eigen::Index n) { return AntilinearOperator(identity(n)); }

Matrix AntilinearOperator::then_after(const AntilinearOperator& other) const {
  return matrix_ * other.matrix_.conjugate();
}

AntilinearOperator AntilinearOperator::after_linear(const Matrix& linear) const {
  return AntilinearOperator(matrix_ * linear.conjugate());
}

AntilinearOperator AntilinearOperator::before_linear(const Matrix& linear) const {
  return AntilinearOperator(linear * matrix_);
}

AntilinearOperator AntilinearOperator::adjoint() const { return AntilinearOperator(matrix_.transpose()); }

Matrix AntilinearOperator::conjugate_linear(const Matrix& x) const {
  return matrix_ * x.conjugate() * matrix_.conjugate();
}

AntilinearPolar polar_decompose_antilinear(const AntilinearOperator& s) {
  const Matrix& a = s.matrix();
  const Matrix positive = hermitian_part(a.transpose() * a.conjugate());
  const auto spectrum = spectral_decompose(positive);
  if (spectrum.eigenvalues.size() > 0 && spectrum.min_eigenvalue() <= tol::eigenvalue_floor) {
    std::ostringstream os;
    os << "polar_decompose_antilinear: operator is singular (S*S eigenvalue " << spectrum.min_eigenvalue()
       << "); null direction:";
    for (Eigen::Index i = 0; i < spectrum.eigenvectors.rows(); ++i) os << ' ' << spectrum.eigenvectors(i, 0);
    throw SingularityError(os.str(), spectrum.min_eigenvalue());
  }
  const Matrix root = matrix_function(spectrum, MatrixFunction::power(0.5));
  const Matrix inv_root = matrix_function(spectrum, MatrixFunction::power(-0.5));
  return {AntilinearOperator(a * inv_root.conjugate()), root, positive};
}

}  // namespace modlab
