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

#include "modlab/jones.hpp"

#include <algorithm>

#include <Eigen/LU>

#include "modlab/errors.hpp"
#include "modlab/tolerances.hpp"

namespace modlab {

Inclusion::Inclusion(MatrixAlgebra larger, MatrixAlgebra smaller, StateDensity state, ExpectationKind kind)
    : larger_(std::move(larger)), smaller_(std::move(smaller)), state_(std::move(state)), kind_(kind) {
  const auto n = larger_.ambient_dimension();
  if (smaller_.ambient_dimension() != n || state_.dimension() != n)
    throw DimensionError("Inclusion: algebra and state dimensions differ");
  const double residual = inclusion_residual();
  if (residual > tol::structural) throw StructureError("Inclusion: smaller algebra is not contained in the larger one");
  const Matrix one = identity(n);
  if (!larger_.contains(one) || !smaller_.contains(one)) throw StructureError("Inclusion: algebras must be unital");
  expectation_ = kind_ == ExpectationKind::trace ? trace_expectation(smaller_)
                                                 : omega_expectation(smaller_, larger_, state_).map;
}

double Inclusion::inclusion_residual() const { return modlab::inclusion_residual(smaller_, larger_); }

Matrix cyclic_subspace(const GnsSpace& gns, const MatrixAlgebra& sub) {
  Matrix cols(gns.dimension(), 0);
  for (const auto& b : sub.basis()) {
    const Vector v = gns.vector_of(b);
    Vector r = v;
    for (int pass = 0; pass < 2; ++pass) r -= cols * (cols.adjoint() * r);
    if (r.norm() > tol::rank * std::max(1.0, v.norm())) {
      cols.conservativeResize(Eigen::NoChange, cols.cols() + 1);
      cols.col(cols.cols() - 1) = r / r.norm();
    }
  }
  return cols;
}

Matrix jones_projection(const Inclusion& inc, const GnsSpace& gns) {
  const Matrix w = cyclic_subspace(gns, inc.smaller());
  return w * w.adjoint();
}

double jones_identity_residual(const Inclusion& inc, const GnsSpace& gns, const Matrix& projection) {
  double worst = 0.0;
  for (const auto& a : inc.larger().basis()) {
    const Matrix lhs = projection * gns.represent(a) * projection;
    const Matrix rhs = gns.represent(inc.expectation()(a)) * projection;
    worst = std::max(worst, (lhs - rhs).norm());
  }
  return worst;
}

double jones_commutation_residual(const Inclusion& inc, const GnsSpace& gns, const Matrix& projection) {
  double worst = 0.0;
  for (const auto& b : inc.smaller().basis()) worst = std::max(worst, commutator(projection, gns.represent(b)).norm());
  return worst;
}

BasicExtension basic_extension(const Inclusion& inc, const GnsSpace& gns, const ModularData& modular) {
  const Matrix projection = jones_projection(inc, gns);
  std::vector<Matrix> generators;
  for (const auto& a : inc.larger().basis()) generators.push_back(gns.represent(a));
  generators.push_back(projection);
  BasicExtension out{MatrixAlgebra::generated_by(gns.dimension(), generators), projection};

  std::vector<Matrix> sub_rep;
  for (const auto& b : inc.smaller().basis()) sub_rep.push_back(gns.represent(b));
  const MatrixAlgebra sub_commutant = commutant(MatrixAlgebra::from_spanning_set(gns.dimension(), sub_rep));
  std::vector<Matrix> reflected;
  for (const auto& x : sub_commutant.basis()) reflected.push_back(modular.conjugation.conjugate_linear(x));
  const OperatorSpan reflected_span = OperatorSpan::from_spanning_set(gns.dimension(), reflected);
  out.commutant_residual = span_equality_residual(out.algebra.span(), reflected_span);
  if (out.algebra.dimension() != reflected_span.dimension()) out.commutant_residual = std::max(out.commutant_residual, 1.0);

  for (const auto& g : generators) out.contains_larger = std::max(out.contains_larger, out.algebra.distance(g));
  return out;
}

MatrixAlgebra relative_commutant(const MatrixAlgebra& a, const MatrixAlgebra& b) {
  if (a.ambient_dimension() != b.ambient_dimension()) throw DimensionError("relative_commutant: dimension mismatch");
  return MatrixAlgebra::from_span(intersect(commutant(a).span(), b.span()));
}

std::optional<double> index_estimate(const GnsSpace& gns, const Matrix& projection) {
  std::vector<Matrix> rep;
  for (const auto& a : gns.algebra().basis()) rep.push_back(gns.represent(a));
  const OperatorSpan span = OperatorSpan::from_spanning_set(gns.dimension(), rep);
  const Matrix image = span.project(projection);
  const auto d = gns.dimension();
  const Complex lambda = image.trace() / static_cast<double>(d);
  if ((image - lambda * identity(d)).norm() > tol::structural || lambda.real() <= tol::eigenvalue_floor)
    return std::nullopt;
  return 1.0 / lambda.real();
}

AntilinearOperator extended_conjugation(const GnsSpace& gns, const MatrixAlgebra& sub, const ModularData& modular) {
  const Matrix w = cyclic_subspace(gns, sub);
  const auto r = w.cols();
  const auto& basis = sub.basis();
  if (static_cast<Eigen::Index>(basis.size()) != r)
    throw SingularityError("extended_conjugation: restricted Tomita map is singular", 0.0);
  Matrix x(r, r), y(r, r);
  for (Eigen::Index k = 0; k < r; ++k) {
    x.col(k) = w.adjoint() * gns.vector_of(basis[k]);
    y.col(k) = w.adjoint() * gns.vector_of(basis[k].adjoint());
  }
  Eigen::FullPivLU<Matrix> lu(x.conjugate().transpose());
  if (!lu.isInvertible()) throw SingularityError("extended_conjugation: restricted Tomita map is singular", 0.0);
  const Matrix restricted = lu.solve(y.transpose()).transpose();
  const AntilinearOperator sub_conjugation = polar_decompose_antilinear(AntilinearOperator(restricted)).conjugation;
  // v -> W J_sub(W^dagger v) + J_M((1 - Q) v); conj(W^dagger v) = W^T conj(v).
  const Matrix complement = identity(gns.dimension()) - w * w.adjoint();
  const Matrix a = w * sub_conjugation.matrix() * w.transpose() + modular.conjugation.matrix() * complement.conjugate();
  return AntilinearOperator(a);
}

double CanonicalShift::max_transport() const {
  return transport_distances.empty() ? 0.0 : *std::max_element(transport_distances.begin(), transport_distances.end());
}

CanonicalShift canonical_shift(const Inclusion& inc, const GnsSpace& gns, const ModularData& modular,
                               const BasicExtension& extension) {
  CanonicalShift out;
  out.extended_conjugation = extended_conjugation(gns, inc.smaller(), modular);
  out.unitary = modular.conjugation.then_after(out.extended_conjugation);
  out.unitarity_residual = (out.unitary.adjoint() * out.unitary - identity(gns.dimension())).norm();

  const MatrixAlgebra rep_larger = gns.represented_algebra();
  const MatrixAlgebra target = relative_commutant(rep_larger, extension.algebra);
  const MatrixAlgebra source = relative_commutant(inc.smaller(), inc.larger());
  for (const auto& x : source.basis()) {
    const Matrix moved = out.unitary * gns.represent(x) * out.unitary.adjoint();
    out.transport_distances.push_back(target.distance(moved));
  }
  return out;
}

}  // namespace modlab
