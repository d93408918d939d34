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

#include "modlab/interpolation.hpp"

#include <algorithm>
#include <cmath>

#include "modlab/errors.hpp"
#include "modlab/jones.hpp"
#include "modlab/tolerances.hpp"

namespace modlab {

namespace {

void require_unit_interval(double s, const char* where) {
  if (!(s >= 0.0 && s <= 1.0)) throw DomainError(std::string(where) + ": s must lie in [0, 1]");
}

Matrix convex_with_identity(const Matrix& map, double s) {
  return (1.0 - s) * identity(map.rows()) + s * map;
}

}  // namespace

CpPathPoint patha_map(const Superoperator& expectation, double s) {
  require_unit_interval(s, "patha_map");
  CpPathPoint point;
  point.s = s;
  point.map = Superoperator(expectation.dimension(), convex_with_identity(expectation.matrix(), s));
  point.choi = point.map.choi();
  point.choi_min_eigenvalue = spectral_decompose(hermitian_part(point.choi)).min_eigenvalue();
  return point;
}

double patha_defect(const Superoperator& expectation, double s) {
  require_unit_interval(s, "patha_defect");
  const Matrix es = convex_with_identity(expectation.matrix(), s);
  return operator_norm(es * es - es);
}

double patha_defect_closed_form(const Superoperator& expectation, double s) {
  require_unit_interval(s, "patha_defect_closed_form");
  const Matrix& e = expectation.matrix();
  return s * (1.0 - s) * operator_norm(identity(e.rows()) - e);
}

Matrix patha_gns_operator(const Matrix& projection, double s) {
  require_unit_interval(s, "patha_gns_operator");
  return convex_with_identity(projection, s);
}

double kadison_schwarz_residual(const CpPathPoint& point, const StateDensity& rho, const Matrix& a) {
  const Matrix image = point.map(a);
  return rho.expectation(a.adjoint() * a).real() - rho.expectation(image.adjoint() * image).real();
}

double unitality_residual(const Superoperator& map) {
  const Matrix one = identity(map.dimension());
  return (map(one) - one).norm();
}

double omega_preservation_residual(const Superoperator& map, const StateDensity& rho) {
  // omega(x) = vec(rho^T)^T vec(x)
  const Vector w = vec(rho.matrix().transpose());
  const Vector defect = map.matrix().transpose() * w - w;
  return defect.cwiseAbs().maxCoeff();
}

Matrix RnData::cocycle(double t) const {
  return complex_power(rho1.spectrum(), Complex(0.0, t)) * complex_power(rho0.spectrum(), Complex(0.0, -t));
}

RnData rn_data(const StateDensity& rho0, const StateDensity& rho1) {
  if (rho0.dimension() != rho1.dimension()) throw DimensionError("rn_data: dimension mismatch");
  const Matrix inv_root = rho0.power(-0.5);
  return RnData{rho0, rho1, hermitian_part(inv_root * rho1.matrix() * inv_root)};
}

StatePath::StatePath(StateDensity rho0, StateDensity rho1, PathKind kind)
    : rn_(rn_data(rho0, rho1)), kind_(kind) {
  log0_ = rn_.rho0.log();
  log1_ = rn_.rho1.log();
  root0_ = rn_.rho0.power(0.5);
  derivative_spectrum_ = spectral_decompose(rn_.derivative);
}

StatePath StatePath::toward_subalgebra(const StateDensity& rho0, const MatrixAlgebra& sub, PathKind kind) {
  return StatePath(rho0, StateDensity(trace_expectation(sub, rho0.matrix())), kind);
}

Matrix StatePath::density(double s) const {
  Matrix unnormalized;
  if (kind_ == PathKind::log_linear) {
    unnormalized = matrix_function(hermitian_part((1.0 - s) * log0_ + s * log1_), MatrixFunction::exp());
  } else {
    const Matrix power = derivative_spectrum_.apply([s](double lambda) { return Complex(std::pow(lambda, s), 0.0); });
    unnormalized = hermitian_part(root0_ * power * root0_);
  }
  return unnormalized / unnormalized.trace().real();
}

StateDensity StatePath::at(double s) const {
  require_unit_interval(s, "StatePath::at");
  if (s == 0.0) return rn_.rho0;
  if (s == 1.0) return rn_.rho1;
  return StateDensity(density(s));
}

Matrix StatePath::momentum(HamiltonianScale scale) const { return traceless((log1_ - log0_) / scale_factor(scale)); }

namespace {

Matrix hamiltonian_at(const StatePath& path, double s, double kappa) {
  if (s >= 0.0 && s <= 1.0) return -path.at(s).log() / kappa;
  return -matrix_function(path.density(s), MatrixFunction::log()) / kappa;
}

}  // namespace

Matrix path_hamiltonian_difference(const StatePath& path, double s, double step, HamiltonianScale scale) {
  if (!(step > 0.0)) throw DomainError("path_hamiltonian_difference: step must be positive");
  const double kappa = scale_factor(scale);
  return (hamiltonian_at(path, s + step, kappa) - hamiltonian_at(path, s - step, kappa)) / (2.0 * step);
}

PathHamiltonian path_hamiltonian(const StatePath& path, double s, HamiltonianScale scale) {
  require_unit_interval(s, "path_hamiltonian");
  const double kappa = scale_factor(scale);
  const StateDensity rho = path.at(s);
  PathHamiltonian out;
  out.hamiltonian = -rho.log() / kappa;
  if (path.kind() == PathKind::log_linear) {
    // log rho_s = (1-s) L0 + s L1 - log Z(s), and Z'/Z = Tr(rho_s (L1 - L0)).
    const Matrix diff = path.end().log() - path.start().log();
    const Complex shift = (rho.matrix() * diff).trace();
    out.derivative = (-diff + shift.real() * identity(diff.rows())) / kappa;
  } else {
    out.derivative = path_hamiltonian_difference(path, s, tol::fd_step, scale);
  }
  return out;
}

Matrix path_generator(const StatePath& path, double s, HamiltonianScale scale) {
  return -2.0 * traceless(path_hamiltonian(path, s, scale).derivative);
}

double cocycle_scaling_residual(const StatePath& path, double s, std::span<const double> times) {
  const StateDensity rho_s = path.at(s);
  const auto& start = path.start().spectrum();
  double worst = 0.0;
  for (double t : times) {
    const Matrix scaled = complex_power(rho_s.spectrum(), Complex(0.0, t)) * complex_power(start, Complex(0.0, -t));
    worst = std::max(worst, phase_distance(scaled, path.rn().cocycle(s * t)));
  }
  return worst;
}

double kind_distance(const StateDensity& rho0, const StateDensity& rho1, double s) {
  const StatePath log_linear(rho0, rho1, PathKind::log_linear);
  const StatePath geodesic(rho0, rho1, PathKind::geodesic);
  return (log_linear.at(s).matrix() - geodesic.at(s).matrix()).norm();
}

Filtration::Filtration(std::vector<MatrixAlgebra> chain) : chain_(std::move(chain)) {
  if (chain_.empty()) throw StructureError("Filtration: empty chain");
  for (std::size_t k = 0; k + 1 < chain_.size(); ++k) {
    if (chain_[k + 1].ambient_dimension() != chain_[k].ambient_dimension())
      throw DimensionError("Filtration: ambient dimensions differ");
    if (inclusion_residual(chain_[k + 1], chain_[k]) > tol::structural)
      throw StructureError("Filtration: chain not nested at position " + std::to_string(k + 1));
  }
}

bool FiltrationReport::passes(double tolerance) const {
  return absorption <= tolerance && nesting <= tolerance && monotonicity <= tolerance && boundary <= tolerance;
}

FiltrationReport filtration_check(const Filtration& filtration, const StateDensity& rho) {
  const auto& chain = filtration.chain();
  const auto& top = chain.front();
  const GnsSpace gns(top, rho);
  std::vector<Matrix> maps;
  std::vector<Matrix> projections;
  for (const auto& a : chain) {
    maps.push_back(omega_expectation(a, top, rho).map.matrix());
    const Matrix w = cyclic_subspace(gns, a);
    projections.push_back(w * w.adjoint());
  }

  FiltrationReport report;
  for (const auto& x : top.basis())
    report.boundary = std::max(report.boundary, (unvec(maps.front() * vec(x), rho.dimension()) - x).norm());
  const std::size_t m = chain.size();
  for (std::size_t k = 0; k < m; ++k) {
    if (k + 1 < m) report.nesting = std::max(report.nesting, inclusion_residual(chain[k + 1], chain[k]));
    for (std::size_t kp = k; kp < m; ++kp) {
      report.absorption = std::max(report.absorption, operator_norm(maps[kp] * maps[k] - maps[kp]));
      report.nesting = std::max(report.nesting, operator_norm(maps[k] * maps[kp] - maps[kp]));
      report.monotonicity =
          std::max(report.monotonicity, operator_norm(projections[k] * projections[kp] - projections[kp]));
    }
  }

  if (m > 1) {
    const double last = static_cast<double>(m - 1);
    std::vector<Matrix> substitutes;
    for (std::size_t k = 0; k < m; ++k) substitutes.push_back(convex_with_identity(maps.back(), k / last));
    for (std::size_t k = 0; k < m; ++k)
      for (std::size_t kp = k; kp < m; ++kp)
        report.patha_absorption = std::max(
            report.patha_absorption, operator_norm(substitutes[kp] * substitutes[k] - substitutes[kp]));
  }
  return report;
}

}  // namespace modlab
