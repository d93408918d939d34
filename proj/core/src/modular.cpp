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

#include "modlab/modular.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/LU>
#include <Eigen/SVD>

#include "modlab/errors.hpp"
#include "modlab/tolerances.hpp"

namespace modlab {

double scale_factor(HamiltonianScale scale) {
  return scale == HamiltonianScale::unit ? 1.0 : 2.0 * std::numbers::pi;
}

GnsSpace::GnsSpace(MatrixAlgebra algebra, StateDensity state)
    : algebra_(std::move(algebra)), state_(std::move(state)) {
  const Eigen::Index n = state_.dimension();
  if (algebra_.ambient_dimension() != n) throw DimensionError("GnsSpace: algebra and state dimensions differ");
  omega_ = state_.power(0.5);
  if (algebra_.dimension() == n * n) {
    embedding_ = identity(n * n);
  } else {
    std::vector<Matrix> vectors;
    for (const auto& b : algebra_.basis()) vectors.push_back(b * omega_);
    embedding_ = OperatorSpan::from_spanning_set(n, vectors).columns();
  }
}

Vector GnsSpace::vector_of(const Matrix& x) const { return embedding_.adjoint() * vec(x * omega_); }

Matrix GnsSpace::represent(const Matrix& a) const {
  return embedding_.adjoint() * left_multiplication(a) * embedding_;
}

MatrixAlgebra GnsSpace::represented_algebra() const {
  std::vector<Matrix> images;
  for (const auto& b : algebra_.basis()) images.push_back(represent(b));
  return MatrixAlgebra::from_spanning_set(dimension(), images);
}

namespace {

Matrix vacuum_images(const GnsSpace& gns) {
  const auto& basis = gns.algebra().basis();
  Matrix x(gns.ambient_dimension() * gns.ambient_dimension(), static_cast<Eigen::Index>(basis.size()));
  for (std::size_t k = 0; k < basis.size(); ++k) x.col(static_cast<Eigen::Index>(k)) = vec(basis[k] * gns.omega());
  return x;
}

}  // namespace

double GnsSpace::separating_margin() const {
  Eigen::JacobiSVD<Matrix> svd(vacuum_images(*this));
  const auto& sv = svd.singularValues();
  return sv.size() ? sv(sv.size() - 1) : 0.0;
}

Eigen::Index GnsSpace::cyclic_rank() const {
  Eigen::JacobiSVD<Matrix> svd(vacuum_images(*this));
  svd.setThreshold(tol::rank);
  return svd.rank();
}

GnsSpace gns_build(const MatrixAlgebra& algebra, const StateDensity& state) { return GnsSpace(algebra, state); }

Matrix ModularData::flow(const Matrix& op, double t) const {
  return delta_power(Complex(0.0, t)) * op * delta_power(Complex(0.0, -t));
}

RealVector ModularData::hamiltonian_spectrum() const {
  const double kappa = scale_factor(scale);
  RealVector k(delta_spectrum.eigenvalues.size());
  // K = -log(Delta)/kappa reverses the order of Delta's ascending spectrum.
  for (Eigen::Index i = 0; i < k.size(); ++i)
    k(i) = -std::log(delta_spectrum.eigenvalues(k.size() - 1 - i)) / kappa;
  return k;
}

ModularData tomita(const GnsSpace& gns, HamiltonianScale scale) {
  const auto& basis = gns.algebra().basis();
  const auto d = gns.dimension();
  if (static_cast<Eigen::Index>(basis.size()) != d)
    throw SingularityError("tomita: Omega is not separating for the algebra", gns.separating_margin());
  // S: x Omega -> x^dagger Omega. With X = [b_k Omega], Y = [b_k^dagger Omega]
  // (GNS coordinates), S(X c) = Y conj(c), hence A conj(X) = Y.
  Matrix x(d, d), y(d, d);
  for (Eigen::Index k = 0; k < d; ++k) {
    x.col(k) = gns.vector_of(basis[k]);
    y.col(k) = gns.vector_of(basis[k].adjoint());
  }
  Eigen::FullPivLU<Matrix> lu(x.conjugate().transpose());
  if (!lu.isInvertible()) throw SingularityError("tomita: Omega is not separating for the algebra", 0.0);
  // A = Y conj(X)^{-1}  <=>  conj(X)^T A^T = Y^T
  const Matrix a = lu.solve(y.transpose()).transpose();

  ModularData out;
  out.tomita = AntilinearOperator(a);
  auto polar = polar_decompose_antilinear(out.tomita);
  out.conjugation = polar.conjugation;
  out.delta = polar.positive;
  out.delta_root = polar.positive_root;
  out.delta_spectrum = spectral_decompose(out.delta);
  out.scale = scale;
  const double kappa = scale_factor(scale);
  out.hamiltonian = out.delta_spectrum.apply([kappa](double lambda) { return Complex(-std::log(lambda) / kappa, 0.0); });
  return out;
}

ModularResiduals modular_residuals(const GnsSpace& gns, const ModularData& data) {
  ModularResiduals r;
  const auto d = gns.dimension();
  const Matrix id = identity(d);
  for (const auto& b : gns.algebra().basis()) {
    const Vector image = data.conjugation.apply(data.delta_root * gns.vector_of(b));
    r.adjoint_reproduction = std::max(r.adjoint_reproduction, (image - gns.vector_of(b.adjoint())).norm());
  }
  r.tomita_involution = (data.tomita.then_after(data.tomita) - id).norm();
  r.conjugation_involution = (data.conjugation.then_after(data.conjugation) - id).norm();
  r.conjugation_unitarity = (data.conjugation.matrix().adjoint() * data.conjugation.matrix() - id).norm();
  const double kappa = scale_factor(data.scale);
  const Matrix rebuilt = matrix_function(data.hamiltonian * Complex(-kappa, 0.0), MatrixFunction::exp());
  r.delta_vs_hamiltonian = (data.delta - rebuilt).norm();
  const Matrix delta_inv = data.delta_power(Complex(-1.0, 0.0));
  r.j_delta_j = (data.conjugation.conjugate_linear(data.delta) - delta_inv).norm();
  const Vector vac = gns.vacuum();
  r.vacuum_delta = (data.delta * vac - vac).norm();
  r.vacuum_conjugation = (data.conjugation.apply(vac) - vac).norm();
  return r;
}

CommutationReport verify_commutation(const GnsSpace& gns, const ModularData& data, std::span<const double> times) {
  CommutationReport report;
  const MatrixAlgebra rep = gns.represented_algebra();
  const MatrixAlgebra rep_commutant = commutant(rep);
  std::vector<Matrix> reflected;
  for (const auto& b : rep.basis()) reflected.push_back(data.conjugation.conjugate_linear(b));
  const OperatorSpan reflected_span = OperatorSpan::from_spanning_set(gns.dimension(), reflected);
  report.conjugation_residual = span_equality_residual(reflected_span, rep_commutant.span());
  if (reflected_span.dimension() != rep_commutant.dimension())
    report.conjugation_residual = std::max(report.conjugation_residual, 1.0);
  for (double t : times)
    for (const auto& b : rep.basis()) report.flow_residual = std::max(report.flow_residual, rep.distance(data.flow(b, t)));
  return report;
}

Matrix modular_flow(const StateDensity& rho, const Matrix& b, Complex z) {
  const Complex iz = kI * z;
  return complex_power(rho.spectrum(), iz) * b * complex_power(rho.spectrum(), -iz);
}

double kms_residual_at(const StateDensity& rho, const Matrix& a, const Matrix& b, Complex z) {
  return std::abs(rho.expectation(a * modular_flow(rho, b, z)) - rho.expectation(b * a));
}

double kms_residual(const GnsSpace& gns, const Matrix& a, const Matrix& b) {
  return kms_residual_at(gns.state(), a, b, kKmsPoint);
}

}  // namespace modlab
