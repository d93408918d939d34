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

#include <cmath>
#include <vector>

#include "modlab/errors.hpp"
#include "modlab/interpolation.hpp"
#include "modlab/jones.hpp"
#include "support.hpp"

using namespace modlab;
using namespace testing_support;

namespace {

Matrix convex(const Matrix& e, double s) { return (1.0 - s) * Matrix::Identity(e.rows(), e.cols()) + s * e; }

Matrix normalized(const Matrix& m) { return m / m.trace().real(); }

}  // namespace

TEST_CASE("half-way point of the convex path onto the scalars of M2") {
  const Superoperator e = trace_expectation(MatrixAlgebra::scalars(2));
  const CpPathPoint half = patha_map(e, 0.5);
  const Matrix a = diag({1.0, 0.0});
  CHECK((half.map(a) - diag({0.75, 0.25})).cwiseAbs().maxCoeff() <= 1e-12);
  Gen gen(51);
  for (int trial = 0; trial < 100; ++trial) {
    const Matrix x = gen.ginibre(2, 2);
    const Complex tr = x.trace();
    CHECK((half.map(x) - (0.5 * x + 0.25 * tr * identity(2))).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK((half.map(half.map(x)) - (0.25 * x + 0.375 * tr * identity(2))).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("idempotency defect of the convex path is s(1-s)||id - E||") {
  Gen gen(52);
  const std::vector<Superoperator> maps{trace_expectation(MatrixAlgebra::scalars(2)),
                                        trace_expectation(MatrixAlgebra::diagonal(3)),
                                        trace_expectation(MatrixAlgebra::left_factor(2, 2))};
  for (const auto& e : maps) {
    const double gap = oracle_operator_norm(identity(e.matrix().rows()) - e.matrix());
    for (double s : {0.0, 0.1, 0.25, 0.5, 0.8, 1.0}) {
      const Matrix es = convex(e.matrix(), s);
      const double oracle = oracle_operator_norm(es * es - es);
      CHECK(std::abs(patha_defect(e, s) - oracle) <= 1e-12);
      CHECK(std::abs(patha_defect(e, s) - s * (1.0 - s) * gap) <= 1e-12);
      CHECK(std::abs(patha_defect_closed_form(e, s) - s * (1.0 - s) * gap) <= 1e-12);
    }
  }
  CHECK_THROWS_AS(patha_defect(maps[0], 1.5), DomainError);
}

TEST_CASE("convex path stays unital, completely positive and state preserving") {
  Gen gen(53);
  const StateDensity rho = StateDensity::diagonal({0.5, 0.3, 0.2});
  const Inclusion inc(MatrixAlgebra::full(3), MatrixAlgebra::diagonal(3), rho);
  for (int k = 0; k <= 20; ++k) {
    const double s = k / 20.0;
    const CpPathPoint point = patha_map(inc.expectation(), s);
    CHECK(point.choi_min_eigenvalue >= -1e-10);
    CHECK(unitality_residual(point.map) <= 1e-10);
    CHECK(omega_preservation_residual(point.map, rho) <= 1e-10);
    for (int probe = 0; probe < 5; ++probe)
      CHECK(kadison_schwarz_residual(point, rho, gen.ginibre(3, 3)) >= -1e-10);
  }
}

TEST_CASE("convex GNS operator has spectrum in {1 - s, 1}") {
  const StateDensity rho = StateDensity::tracial(2);
  const Inclusion inc(MatrixAlgebra::full(2), MatrixAlgebra::diagonal(2), rho);
  const GnsSpace gns(inc.larger(), rho);
  const Matrix e = jones_projection(inc, gns);
  for (double s : {0.0, 0.3, 0.7, 1.0}) {
    const Matrix op = patha_gns_operator(e, s);
    const auto spec = spectral_decompose(op).eigenvalues;
    for (Eigen::Index k = 0; k < spec.size(); ++k)
      CHECK(std::min(std::abs(spec(k) - 1.0), std::abs(spec(k) - (1.0 - s))) <= 1e-12);
    CHECK(oracle_operator_norm(op) <= 1.0 + 1e-12);
  }
}

TEST_CASE("Radon-Nikodym data") {
  Gen gen(54);
  const StateDensity rho0(gen.density(3)), rho1(gen.density(3));
  const RnData rn = rn_data(rho0, rho1);
  const Matrix root_inv = oracle_sqrt(rho0.matrix()).inverse();
  CHECK((rn.derivative - root_inv * rho1.matrix() * root_inv).norm() <= 1e-10);
  const Matrix u = rn.cocycle(0.6);
  CHECK((u.adjoint() * u - identity(3)).norm() <= 1e-12);
  CHECK((rn.cocycle(0.0) - identity(3)).norm() <= 1e-12);
}

TEST_CASE("state paths match closed-form references") {
  Gen gen(55);
  const Matrix r0 = gen.density(3), r1 = gen.density(3);
  const StatePath log_linear(StateDensity(r0), StateDensity(r1), PathKind::log_linear);
  const StatePath geodesic(StateDensity(r0), StateDensity(r1), PathKind::geodesic);
  const Matrix root = oracle_sqrt(r0), root_inv = root.inverse();
  const Matrix h = root_inv * r1 * root_inv;
  for (double s : {0.2, 0.5, 0.9}) {
    const Matrix ll = normalized(oracle_exp((1.0 - s) * oracle_log(r0) + s * oracle_log(r1)));
    CHECK((log_linear.at(s).matrix() - ll).norm() <= 1e-10);
    const Matrix geo = normalized(root * Matrix(h.pow(s)) * root);
    CHECK((geodesic.at(s).matrix() - geo).norm() <= 1e-10);
  }
  CHECK(log_linear.at(0.0).matrix() == StateDensity(r0).matrix());
  CHECK(geodesic.at(1.0).matrix() == StateDensity(r1).matrix());
  CHECK_THROWS_AS(log_linear.at(-0.1), DomainError);
}

TEST_CASE("path toward a subalgebra ends at the trace expectation") {
  Gen gen(56);
  const Matrix r0 = gen.density(3);
  const StatePath path = StatePath::toward_subalgebra(StateDensity(r0), MatrixAlgebra::diagonal(3), PathKind::log_linear);
  CHECK((path.end().matrix() - Matrix(r0.diagonal().asDiagonal())).norm() <= 1e-14);
}

TEST_CASE("commuting endpoints: both path kinds agree") {
  const StateDensity r0 = StateDensity::diagonal({0.6, 0.3, 0.1});
  const StateDensity r1 = StateDensity::diagonal({0.2, 0.2, 0.6});
  for (double s : {0.25, 0.5, 0.75}) CHECK(kind_distance(r0, r1, s) <= 1e-12);
}

TEST_CASE("thermal qubit flowing to the tracial state: K'(0) = -P = diag(ln2/2, -ln2/2)") {
  const StateDensity rho0 = StateDensity::diagonal({2.0 / 3.0, 1.0 / 3.0});
  const StatePath path = StatePath::toward_subalgebra(rho0, MatrixAlgebra::scalars(2), PathKind::log_linear);
  const double half_ln2 = std::log(2.0) / 2.0;
  const Matrix p = path.momentum();
  CHECK((p - diag({-half_ln2, half_ln2})).cwiseAbs().maxCoeff() <= 1e-12);
  const Matrix kprime = traceless(path_hamiltonian(path, 0.0).derivative);
  CHECK((kprime - diag({half_ln2, -half_ln2})).cwiseAbs().maxCoeff() <= 1e-12);
  const Matrix difference = traceless(path_hamiltonian_difference(path, 0.0, 1e-4));
  CHECK((difference + p).norm() <= 1e-6);
}

TEST_CASE("K'(0) = -P on random log-linear paths") {
  Gen gen(57);
  for (int trial = 0; trial < 100; ++trial) {
    const Eigen::Index n = gen.integer(2, 4);
    const StatePath path(StateDensity(gen.density(n)), StateDensity(gen.density(n)), PathKind::log_linear);
    const Matrix p = path.momentum();
    CHECK((traceless(path_hamiltonian(path, 0.0).derivative) + p).norm() <= 1e-10);
    CHECK((traceless(path_hamiltonian_difference(path, 0.0, 1e-4)) + p).norm() <= 1e-6);
  }
}

TEST_CASE("K'(0) = -P on geodesics with commuting endpoints") {
  Gen gen(58);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix u = gen.unitary(3);
    const Matrix d0 = diag({gen.uniform(0.1, 1), gen.uniform(0.1, 1), gen.uniform(0.1, 1)});
    const Matrix d1 = diag({gen.uniform(0.1, 1), gen.uniform(0.1, 1), gen.uniform(0.1, 1)});
    const Matrix r0 = normalized(u * d0 * u.adjoint()), r1 = normalized(u * d1 * u.adjoint());
    const StatePath path(StateDensity(r0), StateDensity(r1), PathKind::geodesic);
    CHECK((traceless(path_hamiltonian(path, 0.0).derivative) + path.momentum()).norm() <= 1e-6);
  }
}

TEST_CASE("log-linear generator is constant and equal to twice the momentum") {
  Gen gen(59);
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::Index n = gen.integer(2, 4);
    const StatePath path(StateDensity(gen.density(n)), StateDensity(gen.density(n)), PathKind::log_linear);
    for (auto scale : {HamiltonianScale::unit, HamiltonianScale::two_pi}) {
      const Matrix p = path.momentum(scale);
      for (double s : {0.0, 0.3, 1.0}) CHECK((path_generator(path, s, scale) - 2.0 * p).norm() <= 1e-10);
      const Matrix g = path_generator(path, 0.5, scale);
      CHECK((oracle_exp(Complex(0, -1) * g) - oracle_exp(Complex(0, -2) * p)).norm() <= 1e-10);
    }
  }
}

TEST_CASE("cocycle scaling holds for commuting endpoints") {
  const StatePath path(StateDensity::diagonal({0.6, 0.3, 0.1}), StateDensity::diagonal({0.2, 0.2, 0.6}),
                       PathKind::geodesic);
  const double times[] = {-1.0, 0.5, 2.0};
  for (double s : {0.25, 0.5, 0.75}) CHECK(cocycle_scaling_residual(path, s, times) <= 1e-10);
}

TEST_CASE("filtration M4 > M2 x 1 > C") {
  Gen gen(60);
  const Filtration chain({MatrixAlgebra::full(4), MatrixAlgebra::left_factor(2, 2), MatrixAlgebra::scalars(4)});
  for (const auto& rho : {StateDensity::tracial(4), StateDensity(kron(gen.density(2), gen.density(2)))}) {
    const FiltrationReport r = filtration_check(chain, rho);
    CHECK(r.absorption <= 1e-10);
    CHECK(r.nesting <= 1e-10);
    CHECK(r.monotonicity <= 1e-10);
    CHECK(r.boundary <= 1e-10);
    CHECK(r.patha_absorption >= 1e-2);
    CHECK(r.passes());
  }
  CHECK_THROWS_AS(Filtration({MatrixAlgebra::diagonal(4), MatrixAlgebra::left_factor(2, 2)}), StructureError);
}
