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

// Helpers shared by the unit tests. Test inputs come from std::mt19937_64 so
// they do not depend on the library's own random streams, and reference values
// are computed with algorithms independent of the code under test (Eigen's
// Schur-Parlett matrix functions, explicit index loops, SVD).
#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include "modlab/linalg.hpp"

namespace testing_support {

using modlab::Complex;
using modlab::Matrix;
using modlab::Vector;

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : engine_(seed) {}

  double normal() { return normal_(engine_); }
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }

  Matrix ginibre(Eigen::Index rows, Eigen::Index cols) {
    Matrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
      for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = Complex(normal(), normal()) / std::sqrt(2.0);
    return m;
  }

  Vector unit_vector(Eigen::Index n) {
    Vector v = ginibre(n, 1).col(0);
    return v / v.norm();
  }

  Matrix hermitian(Eigen::Index n) {
    const Matrix g = ginibre(n, n);
    return (g + g.adjoint()) / 2.0;
  }

  Matrix unitary(Eigen::Index n) {
    Eigen::HouseholderQR<Matrix> qr(ginibre(n, n));
    return qr.householderQ() * Matrix::Identity(n, n);
  }

  // Faithful density: normalized Wishart mixed with the tracial state.
  Matrix density(Eigen::Index n, double floor = 0.05) {
    const Matrix g = ginibre(n, n);
    Matrix w = g * g.adjoint();
    w /= w.trace().real();
    return (1.0 - floor) * w + floor * Matrix::Identity(n, n) / static_cast<double>(n);
  }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

inline Matrix oracle_exp(const Matrix& m) { return m.exp(); }
inline Matrix oracle_log(const Matrix& m) { return m.log(); }
inline Matrix oracle_sqrt(const Matrix& m) { return m.sqrt(); }

inline Matrix oracle_kron(const Matrix& a, const Matrix& b) { return Eigen::kroneckerProduct(a, b).eval(); }

inline double oracle_operator_norm(const Matrix& m) {
  return Eigen::JacobiSVD<Matrix>(m).singularValues()(0);
}

inline Matrix pauli_x() { Matrix m(2, 2); m << 0, 1, 1, 0; return m; }
inline Matrix pauli_y() { Matrix m(2, 2); m << 0, Complex(0, -1), Complex(0, 1), 0; return m; }
inline Matrix pauli_z() { Matrix m(2, 2); m << 1, 0, 0, -1; return m; }

inline Matrix diag(std::initializer_list<double> values) {
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(values.size()), static_cast<Eigen::Index>(values.size()));
  Eigen::Index k = 0;
  for (double v : values) { m(k, k) = v; ++k; }
  return m;
}

}  // namespace testing_support
