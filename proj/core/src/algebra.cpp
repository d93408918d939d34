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

#include "modlab/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "modlab/errors.hpp"
#include "modlab/tolerances.hpp"

namespace modlab {

namespace {

Matrix matrix_unit(Eigen::Index n, Eigen::Index i, Eigen::Index j) {
  Matrix e = Matrix::Zero(n, n);
  e(i, j) = 1.0;
  return e;
}

// Orthonormal basis (columns) of the null space of a PSD operator.
Matrix null_space_columns(const Matrix& psd, double relative_threshold) {
  const auto spectrum = spectral_decompose(hermitian_part(psd));
  const double scale = std::max(1.0, std::abs(spectrum.max_eigenvalue()));
  Eigen::Index count = 0;
  while (count < spectrum.eigenvalues.size() && spectrum.eigenvalues(count) <= relative_threshold * scale) ++count;
  return spectrum.eigenvectors.leftCols(count);
}

}  // namespace

// ---------------------------------------------------------------------------
// OperatorSpan

void OperatorSpan::push(const Vector& unit) {
  basis_.push_back(unvec(unit, n_));
  cols_.conservativeResize(Eigen::NoChange, cols_.cols() + 1);
  cols_.col(cols_.cols() - 1) = unit;
}

bool OperatorSpan::try_add(const Matrix& x, double reference) {
  if (x.rows() != n_ || x.cols() != n_) throw DimensionError("OperatorSpan: element has wrong shape");
  const double norm0 = x.norm();
  if (norm0 == 0.0 || !std::isfinite(norm0)) return false;
  Vector r = vec(x);
  for (int pass = 0; pass < 2 && cols_.cols() > 0; ++pass) r -= cols_ * (cols_.adjoint() * r);
  const double rn = r.norm();
  if (rn <= tol::rank * std::max(norm0, reference)) return false;
  push(r / rn);
  return true;
}

OperatorSpan OperatorSpan::from_spanning_set(Eigen::Index n, const std::vector<Matrix>& elements) {
  OperatorSpan span(n);
  for (const auto& x : elements) span.try_add(x);
  return span;
}

OperatorSpan OperatorSpan::from_vec_columns(Eigen::Index n, const Matrix& columns) {
  OperatorSpan span(n);
  const Eigen::Index target = columns.cols();
  if (target == 0) return span;
  // Well-conditioned projections of matrix units first, raw columns as a fallback.
  for (Eigen::Index i = 0; i < n && span.dimension() < target; ++i)
    for (Eigen::Index j = 0; j < n && span.dimension() < target; ++j) {
      Vector e = Vector::Zero(n * n);
      e(i * n + j) = 1.0;
      const Vector p = columns * (columns.adjoint() * e);
      if (p.norm() < 1e-3) continue;
      Vector r = p;
      const Matrix& cur = span.columns();
      for (int pass = 0; pass < 2 && cur.cols() > 0; ++pass) r -= cur * (cur.adjoint() * r);
      if (r.norm() < 1e-3 * p.norm()) continue;
      // Re-project so numerical drift never leaves the subspace.
      r = columns * (columns.adjoint() * r);
      if (cur.cols() > 0) r -= cur * (cur.adjoint() * r);
      span.push(r / r.norm());
    }
  for (Eigen::Index c = 0; c < target && span.dimension() < target; ++c) span.try_add(unvec(columns.col(c), n));
  return span;
}

Matrix OperatorSpan::projector() const { return cols_ * cols_.adjoint(); }

Matrix OperatorSpan::project(const Matrix& x) const {
  if (x.rows() != n_ || x.cols() != n_) throw DimensionError("OperatorSpan::project: shape mismatch");
  if (basis_.empty()) return Matrix::Zero(n_, n_);
  return unvec(cols_ * (cols_.adjoint() * vec(x)), n_);
}

double OperatorSpan::distance(const Matrix& x) const { return (x - project(x)).norm(); }

bool OperatorSpan::contains(const Matrix& x, double tolerance) const { return distance(x) <= tolerance; }

double inclusion_residual(const OperatorSpan& inner, const OperatorSpan& outer) {
  if (inner.ambient_dimension() != outer.ambient_dimension()) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (const auto& b : inner.basis()) worst = std::max(worst, outer.distance(b));
  return worst;
}

double span_equality_residual(const OperatorSpan& a, const OperatorSpan& b) {
  return std::max(inclusion_residual(a, b), inclusion_residual(b, a));
}

OperatorSpan intersect(const OperatorSpan& a, const OperatorSpan& b) {
  if (a.ambient_dimension() != b.ambient_dimension()) throw DimensionError("intersect: ambient dimension mismatch");
  const Eigen::Index n = a.ambient_dimension();
  const Matrix gap = 2.0 * identity(n * n) - a.projector() - b.projector();
  return OperatorSpan::from_vec_columns(n, null_space_columns(gap, 1e-9));
}

// ---------------------------------------------------------------------------
// MatrixAlgebra

double AlgebraResiduals::max() const { return std::max({gram, adjoint, closure, unit}); }

AlgebraResiduals MatrixAlgebra::residuals() const {
  AlgebraResiduals r;
  const auto& b = span_.basis();
  const Eigen::Index n = ambient_dimension();
  if (!b.empty()) {
    const Matrix cols = span_.columns();
    r.gram = (cols.adjoint() * cols - identity(cols.cols())).cwiseAbs().maxCoeff();
  }
  for (const auto& x : b) r.adjoint = std::max(r.adjoint, span_.distance(x.adjoint()));
  for (const auto& x : b)
    for (const auto& y : b) r.closure = std::max(r.closure, span_.distance(x * y));
  r.unit = span_.distance(identity(n));
  return r;
}

MatrixAlgebra MatrixAlgebra::from_span(OperatorSpan span) {
  MatrixAlgebra alg(std::move(span));
  const auto r = alg.residuals();
  if (!(r.max() <= tol::span)) {
    std::ostringstream os;
    os << "MatrixAlgebra: span is not a unital *-algebra (gram " << r.gram << ", adjoint " << r.adjoint
       << ", closure " << r.closure << ", unit " << r.unit << ")";
    throw StructureError(os.str());
  }
  return alg;
}

MatrixAlgebra MatrixAlgebra::from_spanning_set(Eigen::Index n, const std::vector<Matrix>& elements) {
  return from_span(OperatorSpan::from_spanning_set(n, elements));
}

MatrixAlgebra MatrixAlgebra::generated_by(Eigen::Index n, const std::vector<Matrix>& generators) {
  std::vector<Matrix> gens;
  for (const auto& g : generators) {
    if (g.rows() != n || g.cols() != n) throw DimensionError("generated_by: generator has wrong shape");
    gens.push_back(g);
    gens.push_back(g.adjoint());
  }
  OperatorSpan span(n);
  span.try_add(identity(n));
  for (const auto& g : gens) span.try_add(g);
  Eigen::Index processed = 0;
  std::size_t products = 0;
  const std::size_t bound = static_cast<std::size_t>(n * n) * static_cast<std::size_t>(n * n);
  while (processed < span.dimension()) {
    const Matrix b = span.basis()[processed++];
    for (const auto& g : gens) {
      span.try_add(b * g, g.norm());
      if (++products > bound * std::max<std::size_t>(1, gens.size()))
        throw StructureError("generated_by: product closure did not converge within the n^4 bound");
    }
  }
  return from_span(std::move(span));
}

MatrixAlgebra MatrixAlgebra::full(Eigen::Index n) {
  std::vector<Matrix> units;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) units.push_back(matrix_unit(n, i, j));
  return from_spanning_set(n, units);
}

MatrixAlgebra MatrixAlgebra::scalars(Eigen::Index n) { return from_spanning_set(n, {identity(n)}); }

MatrixAlgebra MatrixAlgebra::diagonal(Eigen::Index n) {
  std::vector<Matrix> units;
  for (Eigen::Index i = 0; i < n; ++i) units.push_back(matrix_unit(n, i, i));
  return from_spanning_set(n, units);
}

MatrixAlgebra MatrixAlgebra::block_diagonal(const std::vector<Eigen::Index>& blocks) {
  Eigen::Index n = 0;
  for (auto k : blocks) n += k;
  std::vector<Matrix> units;
  Eigen::Index offset = 0;
  for (auto k : blocks) {
    for (Eigen::Index i = 0; i < k; ++i)
      for (Eigen::Index j = 0; j < k; ++j) units.push_back(matrix_unit(n, offset + i, offset + j));
    offset += k;
  }
  return from_spanning_set(n, units);
}

MatrixAlgebra MatrixAlgebra::left_factor(Eigen::Index a, Eigen::Index b) {
  std::vector<Matrix> units;
  for (Eigen::Index i = 0; i < a; ++i)
    for (Eigen::Index j = 0; j < a; ++j) units.push_back(kron(matrix_unit(a, i, j), identity(b)));
  return from_spanning_set(a * b, units);
}

MatrixAlgebra MatrixAlgebra::right_factor(Eigen::Index a, Eigen::Index b) {
  std::vector<Matrix> units;
  for (Eigen::Index i = 0; i < b; ++i)
    for (Eigen::Index j = 0; j < b; ++j) units.push_back(kron(identity(a), matrix_unit(b, i, j)));
  return from_spanning_set(a * b, units);
}

MatrixAlgebra MatrixAlgebra::conjugated(const Matrix& u) const {
  std::vector<Matrix> elements;
  for (const auto& b : basis()) elements.push_back(u * b * u.adjoint());
  return from_spanning_set(ambient_dimension(), elements);
}

MatrixAlgebra commutant(const MatrixAlgebra& alg) {
  const Eigen::Index n = alg.ambient_dimension();
  // C^dagger C for C = stack_i (A_i (x) 1 - 1 (x) A_i^T), assembled term by term.
  Matrix left_sum = Matrix::Zero(n, n);
  Matrix right_sum = Matrix::Zero(n, n);
  Matrix cross = Matrix::Zero(n * n, n * n);
  for (const auto& a : alg.basis()) {
    const Matrix at = a.transpose();
    left_sum += a.adjoint() * a;
    right_sum += at.adjoint() * at;
    cross += kron(a.adjoint(), at) + kron(a, at.adjoint());
  }
  const Matrix gram = kron(left_sum, identity(n)) + kron(identity(n), right_sum) - cross;
  return MatrixAlgebra::from_span(OperatorSpan::from_vec_columns(n, null_space_columns(gram, 1e-9)));
}

MatrixAlgebra center(const MatrixAlgebra& alg) {
  return MatrixAlgebra::from_span(intersect(alg.span(), commutant(alg).span()));
}

// ---------------------------------------------------------------------------
// StateDensity

StateDensity::StateDensity(const Matrix& rho) : spectrum_(spectral_decompose(rho)) {
  rho_ = hermitian_part(rho);
  const double tr_err = std::abs(rho_.trace() - Complex(1.0, 0.0));
  if (!(tr_err <= tol::trace)) {
    std::ostringstream os;
    os << "StateDensity: trace differs from 1 by " << tr_err;
    throw StructureError(os.str());
  }
  if (!(margin() > tol::eigenvalue_floor)) {
    std::ostringstream os;
    os << "StateDensity: not faithful, smallest eigenvalue " << margin();
    throw SingularityError(os.str(), margin());
  }
}

StateDensity StateDensity::tracial(Eigen::Index n) {
  return StateDensity(identity(n) / static_cast<double>(n));
}

StateDensity StateDensity::diagonal(const std::vector<double>& probabilities) {
  const auto n = static_cast<Eigen::Index>(probabilities.size());
  Matrix rho = Matrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) rho(i, i) = probabilities[i];
  return StateDensity(rho);
}

Complex StateDensity::expectation(const Matrix& a) const { return (rho_ * a).trace(); }

Matrix StateDensity::log() const { return matrix_function(spectrum_, MatrixFunction::log()); }

Matrix StateDensity::power(double alpha) const {
  if (alpha == 0.0) return identity(dimension());
  if (alpha == 1.0) return rho_;
  return matrix_function(spectrum_, MatrixFunction::power(alpha));
}

// ---------------------------------------------------------------------------
// Superoperator

Superoperator::Superoperator(Eigen::Index n, Matrix m) : n_(n), m_(std::move(m)) {
  if (m_.rows() != n * n || m_.cols() != n * n) throw DimensionError("Superoperator: matrix must be n^2 x n^2");
}

Superoperator Superoperator::identity(Eigen::Index n) { return Superoperator(n, modlab::identity(n * n)); }

Superoperator Superoperator::after(const Superoperator& other) const {
  if (other.n_ != n_) throw DimensionError("Superoperator::after: dimension mismatch");
  return Superoperator(n_, m_ * other.m_);
}

Matrix Superoperator::choi() const {
  Matrix c(n_ * n_, n_ * n_);
  for (Eigen::Index i = 0; i < n_; ++i)
    for (Eigen::Index j = 0; j < n_; ++j) c.block(i * n_, j * n_, n_, n_) = unvec(m_.col(i * n_ + j), n_);
  return c;
}

double Superoperator::choi_min_eigenvalue() const {
  const Matrix c = choi();
  // The Choi matrix of a Hermiticity-preserving map is Hermitian; symmetrize away roundoff.
  return spectral_decompose(hermitian_part(c)).min_eigenvalue();
}

Superoperator operator+(const Superoperator& a, const Superoperator& b) {
  if (a.n_ != b.n_) throw DimensionError("Superoperator +: dimension mismatch");
  return Superoperator(a.n_, a.m_ + b.m_);
}

Superoperator operator*(double c, const Superoperator& a) { return Superoperator(a.n_, c * a.m_); }

// ---------------------------------------------------------------------------
// Expectations

Superoperator trace_expectation(const MatrixAlgebra& sub) {
  return Superoperator(sub.ambient_dimension(), sub.span().projector());
}

Matrix trace_expectation(const MatrixAlgebra& sub, const Matrix& x) { return sub.project(x); }

TakesakiResult takesaki_check(const MatrixAlgebra& sub, const StateDensity& rho) {
  if (sub.ambient_dimension() != rho.dimension()) throw DimensionError("takesaki_check: dimension mismatch");
  const Matrix l = rho.log();
  TakesakiResult out;
  for (const auto& b : sub.basis()) out.residual = std::max(out.residual, sub.distance(commutator(l, b)));
  out.invariant = out.residual <= tol::span * std::max(1.0, l.norm());
  return out;
}

bool OmegaExpectation::passes(double tolerance) const {
  return idempotency <= tolerance && choi_min_eigenvalue >= -tolerance && omega_preservation <= tolerance &&
         bimodule <= tolerance && unitality <= tolerance;
}

OmegaExpectation omega_expectation(const MatrixAlgebra& sub, const MatrixAlgebra& larger, const StateDensity& rho) {
  const Eigen::Index n = rho.dimension();
  if (sub.ambient_dimension() != n || larger.ambient_dimension() != n)
    throw DimensionError("omega_expectation: dimension mismatch");
  const Matrix omega = rho.power(0.5);
  const Matrix omega_inv = rho.power(-0.5);

  std::vector<Matrix> vectors;
  for (const auto& b : sub.basis()) vectors.push_back(b * omega);
  const Matrix q = OperatorSpan::from_spanning_set(n, vectors).columns();
  const Matrix projection = q * q.adjoint();

  OmegaExpectation out;
  out.map = Superoperator(n, right_multiplication(omega_inv) * projection * right_multiplication(omega));
  const auto& e = out.map;

  out.idempotency = operator_norm(e.matrix() * e.matrix() - e.matrix());
  out.unitality = (e(identity(n)) - identity(n)).norm();
  const Superoperator restricted = e.after(trace_expectation(larger));
  out.choi_min_eigenvalue = restricted.choi_min_eigenvalue();
  for (const auto& x : larger.basis())
    out.omega_preservation = std::max(out.omega_preservation, std::abs(rho.expectation(e(x) - x)));
  // E(a x b) = a E(x) b for all a, b in N iff the one-sided identities hold.
  for (const auto& x : larger.basis()) {
    const Matrix ex = e(x);
    for (const auto& a : sub.basis()) {
      out.bimodule = std::max(out.bimodule, (e(a * x) - a * ex).norm());
      out.bimodule = std::max(out.bimodule, (e(x * a) - ex * a).norm());
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Tomiyama

bool TomiyamaReport::hypotheses_hold() const {
  return std::all_of(hypotheses.begin(), hypotheses.end(), [](const auto& h) { return h.passed; });
}

bool TomiyamaReport::conclusions_hold() const {
  return !conclusions.empty() &&
         std::all_of(conclusions.begin(), conclusions.end(), [](const auto& c) { return c.passed; });
}

const TomiyamaItem* TomiyamaReport::find(const std::string& name) const {
  for (const auto* list : {&hypotheses, &conclusions})
    for (const auto& item : *list)
      if (item.name == name) return &item;
  return nullptr;
}

TomiyamaReport verify_tomiyama(const Superoperator& map, const StateDensity& rho, double tolerance) {
  const Eigen::Index n = map.dimension();
  if (rho.dimension() != n) throw DimensionError("verify_tomiyama: dimension mismatch");
  TomiyamaReport report;
  auto add = [](std::vector<TomiyamaItem>& list, std::string name, double residual, double tol_) {
    list.push_back({std::move(name), residual, residual <= tol_});
  };

  // Normality is automatic in finite dimension.
  add(report.hypotheses, "unital", (map(identity(n)) - identity(n)).norm(), tolerance);
  add(report.hypotheses, "completely_positive", std::max(0.0, -map.choi_min_eigenvalue()), tolerance);
  add(report.hypotheses, "idempotent", operator_norm(map.matrix() * map.matrix() - map.matrix()), tolerance);
  // omega(x) = vec(rho^T) . vec(x)
  const Eigen::RowVectorXcd functional = vec(rho.matrix().transpose()).transpose();
  add(report.hypotheses, "omega_preserving", (functional * map.matrix() - functional).cwiseAbs().maxCoeff(),
      tolerance);
  if (!report.hypotheses_hold()) return report;

  std::vector<Matrix> images;
  for (Eigen::Index c = 0; c < n * n; ++c) images.push_back(unvec(map.matrix().col(c), n));
  const OperatorSpan range = OperatorSpan::from_spanning_set(n, images);
  double algebra_residual = range.distance(identity(n));
  for (const auto& x : range.basis()) {
    algebra_residual = std::max(algebra_residual, range.distance(x.adjoint()));
    for (const auto& y : range.basis()) algebra_residual = std::max(algebra_residual, range.distance(x * y));
  }
  add(report.conclusions, "range_is_algebra", algebra_residual, tolerance);

  double bimodule = 0.0;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      const Matrix x = matrix_unit(n, i, j);
      const Matrix tx = map(x);
      for (const auto& a : range.basis()) {
        bimodule = std::max(bimodule, (map(a * x) - a * tx).norm());
        bimodule = std::max(bimodule, (map(x * a) - tx * a).norm());
      }
    }
  add(report.conclusions, "bimodule", bimodule, tolerance);
  return report;
}

}  // namespace modlab
