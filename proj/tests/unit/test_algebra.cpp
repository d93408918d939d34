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

#include <doctest.h>

#include <vector>

#include "modlab/algebra.hpp"
#include "modlab/errors.hpp"
#include "support.hpp"

using namespace modlab;
using namespace testing_support;

namespace {

// Dimension of {x : [x, b] = 0 for all b in basis} from the kernel of the
// stacked commutator maps, via a full-pivot LU.
Eigen::Index commutant_dimension_oracle(const std::vector<Matrix>& basis, Eigen::Index n) {
  Matrix stacked(static_cast<Eigen::Index>(basis.size()) * n * n, n * n);
  for (std::size_t k = 0; k < basis.size(); ++k) {
    const Matrix& b = basis[k];
    Matrix map(n * n, n * n);
    for (Eigen::Index c = 0; c < n * n; ++c) {
      Matrix unit = Matrix::Zero(n, n);
      unit(c / n, c % n) = 1.0;
      const Matrix comm = unit * b - b * unit;
      for (Eigen::Index r = 0; r < n * n; ++r) map(r, c) = comm(r / n, r % n);
    }
    stacked.middleRows(static_cast<Eigen::Index>(k) * n * n, n * n) = map;
  }
  Eigen::FullPivLU<Matrix> lu(stacked);
  lu.setThreshold(1e-10);
  return n * n - lu.rank();
}

MatrixAlgebra random_block_algebra(Gen& gen, std::vector<Eigen::Index> blocks) {
  Eigen::Index n = 0;
  for (auto b : blocks) n += b;
  return MatrixAlgebra::block_diagonal(blocks).conjugated(gen.unitary(n));
}

}  // namespace

TEST_CASE("standard algebras have the expected dimensions and close") {
  CHECK(MatrixAlgebra::full(3).dimension() == 9);
  CHECK(MatrixAlgebra::scalars(4).dimension() == 1);
  CHECK(MatrixAlgebra::diagonal(3).dimension() == 3);
  CHECK(MatrixAlgebra::left_factor(2, 3).dimension() == 4);
  CHECK(MatrixAlgebra::right_factor(2, 3).dimension() == 9);
  CHECK(MatrixAlgebra::block_diagonal({1, 2}).dimension() == 5);
  for (const auto& a : {MatrixAlgebra::full(3), MatrixAlgebra::left_factor(2, 2), MatrixAlgebra::block_diagonal({2, 1})})
    CHECK(a.residuals().max() <= 1e-12);
}

TEST_CASE("span basis is orthonormal and the projector is idempotent") {
  Gen gen(21);
  std::vector<Matrix> elements{gen.ginibre(3, 3), gen.ginibre(3, 3)};
  elements.push_back(elements[0] + 2.0 * elements[1]);
  const OperatorSpan span = OperatorSpan::from_spanning_set(3, elements);
  CHECK(span.dimension() == 2);
  const Matrix p = span.projector();
  CHECK((p * p - p).norm() <= 1e-12);
  CHECK((p - p.adjoint()).norm() <= 1e-12);
  CHECK(span.contains(elements[2], 1e-10));
  CHECK_FALSE(span.contains(gen.ginibre(3, 3), 1e-10));
  CHECK_THROWS_AS(OperatorSpan::from_spanning_set(3, {Matrix::Zero(2, 2)}), DimensionError);
}

TEST_CASE("generated algebras") {
  CHECK(MatrixAlgebra::generated_by(2, {pauli_z()}).dimension() == 2);
  CHECK(MatrixAlgebra::generated_by(2, {pauli_x(), pauli_z()}).dimension() == 4);
  const Matrix p = diag({1.0, 1.0, 0.0});
  CHECK(MatrixAlgebra::generated_by(3, {p}).dimension() == 2);
  CHECK_THROWS_AS(MatrixAlgebra::from_spanning_set(2, {diag({1.0, 0.0}) + pauli_x()}), StructureError);
}

TEST_CASE("commutant dimension agrees with a kernel computation") {
  Gen gen(22);
  const std::vector<std::vector<Eigen::Index>> shapes{{2}, {1, 1}, {1, 2}, {1, 1, 1}, {2, 2}, {1, 3}, {1, 1, 2}};
  for (const auto& shape : shapes) {
    const MatrixAlgebra a = random_block_algebra(gen, shape);
    const MatrixAlgebra c = commutant(a);
    CHECK(c.dimension() == commutant_dimension_oracle(a.basis(), a.ambient_dimension()));
    for (const auto& x : c.basis())
      for (const auto& b : a.basis()) CHECK((x * b - b * x).norm() <= 1e-10);
    // Double commutant theorem.
    CHECK(span_equality_residual(commutant(c).span(), a.span()) <= 1e-10);
  }
}

TEST_CASE("commutant of M_2 (x) 1 is 1 (x) M_2 and the center of a block algebra") {
  CHECK(span_equality_residual(commutant(MatrixAlgebra::left_factor(2, 2)).span(),
                               MatrixAlgebra::right_factor(2, 2).span()) <= 1e-12);
  CHECK(commutant(MatrixAlgebra::full(3)).dimension() == 1);
  CHECK(center(MatrixAlgebra::block_diagonal({1, 2})).dimension() == 2);
  CHECK(center(MatrixAlgebra::full(3)).dimension() == 1);
}

TEST_CASE("state densities validate trace and faithfulness") {
  CHECK_THROWS_AS(StateDensity(diag({1.0, 0.0})), SingularityError);
  CHECK_THROWS_AS(StateDensity(diag({0.6, 0.6})), StructureError);
  Matrix skew(2, 2);
  skew << 0.5, 0.2, 0.0, 0.5;
  CHECK_THROWS_AS(StateDensity{skew}, NonHermitianError);
  const StateDensity tr = StateDensity::tracial(3);
  CHECK(std::abs(tr.expectation(diag({3.0, 0.0, 0.0})) - 1.0) <= 1e-15);
}

TEST_CASE("trace expectation on standard inclusions") {
  Gen gen(23);
  const Matrix a = gen.ginibre(2, 2);
  CHECK((trace_expectation(MatrixAlgebra::scalars(2), a) - a.trace() / 2.0 * identity(2)).norm() <= 1e-14);
  const Matrix d = trace_expectation(MatrixAlgebra::diagonal(2), a);
  CHECK((d - Matrix(a.diagonal().asDiagonal())).norm() <= 1e-14);
  const Matrix x = gen.ginibre(4, 4);
  const std::vector<int> dims{2, 2}, first{0};
  const Matrix expected = kron(partial_trace(x, dims, first) / 2.0, identity(2));
  CHECK((trace_expectation(MatrixAlgebra::left_factor(2, 2), x) - expected).norm() <= 1e-13);
}

TEST_CASE("trace expectation is an idempotent, trace-preserving bimodule map") {
  Gen gen(24);
  for (int trial = 0; trial < 10; ++trial) {
    const MatrixAlgebra sub = random_block_algebra(gen, {1, 2});
    const Superoperator e = trace_expectation(sub);
    CHECK((e.matrix() * e.matrix() - e.matrix()).norm() <= 1e-12);
    const Matrix x = gen.ginibre(3, 3);
    CHECK(std::abs(e(x).trace() - x.trace()) <= 1e-12);
    const Matrix left = sub.basis()[0], right = sub.basis()[1];
    CHECK((e(left * x * right) - left * e(x) * right).norm() <= 1e-12);
    CHECK(e.choi_min_eigenvalue() >= -1e-12);
  }
}

TEST_CASE("Choi matrices of identity and transpose") {
  const Superoperator id = Superoperator::identity(2);
  CHECK(id.choi_min_eigenvalue() == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(spectral_decompose(id.choi()).max_eigenvalue() == doctest::Approx(2.0));
  const auto transpose = Superoperator::from_function(2, [](const Matrix& x) { return Matrix(x.transpose()); });
  CHECK(transpose.choi_min_eigenvalue() == doctest::Approx(-1.0));
}

TEST_CASE("Takesaki criterion") {
  Gen gen(25);
  CHECK(takesaki_check(MatrixAlgebra::diagonal(3), StateDensity::diagonal({0.5, 0.3, 0.2})).invariant);
  CHECK(takesaki_check(MatrixAlgebra::diagonal(3), StateDensity::tracial(3)).invariant);
  const auto generic = takesaki_check(MatrixAlgebra::diagonal(3), StateDensity(gen.density(3)));
  CHECK_FALSE(generic.invariant);
  CHECK(generic.residual > 1e-6);
  // Product states leave the tensor factor invariant.
  const StateDensity product(kron(gen.density(2), gen.density(2)));
  CHECK(takesaki_check(MatrixAlgebra::left_factor(2, 2), product).invariant);
  // N = M is always invariant.
  CHECK(takesaki_check(MatrixAlgebra::full(3), StateDensity(gen.density(3))).invariant);
}

TEST_CASE("omega expectation: a conditional expectation exactly when Takesaki holds") {
  Gen gen(26);
  const MatrixAlgebra full = MatrixAlgebra::full(3);
  const MatrixAlgebra diag3 = MatrixAlgebra::diagonal(3);
  const StateDensity compatible = StateDensity::diagonal({0.5, 0.3, 0.2});
  const auto good = omega_expectation(diag3, full, compatible);
  CHECK(good.passes());
  // With a compatible state it is the state-preserving expectation E(x)_ii = x_ii.
  const Matrix x = gen.ginibre(3, 3);
  CHECK((good.map(x) - Matrix(x.diagonal().asDiagonal())).norm() <= 1e-12);

  const StateDensity generic(gen.density(3));
  const auto bad = omega_expectation(diag3, full, generic);
  CHECK(bad.idempotency <= 1e-10);
  CHECK(bad.unitality <= 1e-10);
  CHECK(bad.omega_preservation <= 1e-10);
  CHECK(bad.bimodule > 1e-6);
  CHECK_FALSE(bad.passes());
}

TEST_CASE("Tomiyama check on expectations and convex mixtures") {
  Gen gen(27);
  const StateDensity tracial = StateDensity::tracial(3);
  const MatrixAlgebra sub = random_block_algebra(gen, {1, 2});
  const Superoperator e = trace_expectation(sub);
  const auto report = verify_tomiyama(e, tracial);
  CHECK(report.hypotheses_hold());
  CHECK(report.conclusions_hold());
  CHECK(report.find("range_is_algebra")->residual <= 1e-10);
  const Superoperator mixed = 0.5 * Superoperator::identity(3) + 0.5 * e;
  const auto interior = verify_tomiyama(mixed, tracial);
  CHECK_FALSE(interior.hypotheses_hold());
  CHECK(interior.find("idempotent")->residual >= 1e-3);
  CHECK(interior.consistent());
}
