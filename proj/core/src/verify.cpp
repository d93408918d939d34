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

#include "modlab/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

#include "modlab/algebra.hpp"
#include "modlab/errors.hpp"
#include "modlab/experiments.hpp"
#include "modlab/interpolation.hpp"
#include "modlab/jones.hpp"
#include "modlab/modular.hpp"
#include "modlab/random.hpp"

namespace modlab {

bool Check::passed() const {
  switch (bound) {
    case Bound::at_most: return value <= threshold;
    case Bound::at_least: return value >= threshold;
    case Bound::report: return true;
  }
  return false;
}

bool SuiteResult::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed(); });
}

const Check* SuiteResult::find(const std::string& check) const {
  for (const auto& c : checks)
    if (c.name == check) return &c;
  return nullptr;
}

void SuiteResult::add(std::string check, double value, double threshold, Bound bound) {
  checks.push_back(Check{std::move(check), value, threshold, bound});
}

bool RunReport::passed() const {
  return std::all_of(suites.begin(), suites.end(), [](const SuiteResult& s) { return s.passed(); });
}

const SuiteResult* RunReport::find(const std::string& suite) const {
  for (const auto& s : suites)
    if (s.name == suite) return &s;
  return nullptr;
}

namespace {

const char* bound_name(Bound b) {
  switch (b) {
    case Bound::at_most: return "at_most";
    case Bound::at_least: return "at_least";
    case Bound::report: return "report";
  }
  return "unknown";
}

}  // namespace

io::Json RunReport::to_json() const {
  io::Json out;
  out["tool"] = "modlab";
  out["version"] = version;
  io::Json names = io::Json::array();
  for (const auto& s : suites) names.push_back(s.name);
  out["config"] = {{"suites", names}, {"dims", options.dims}, {"seed", options.seed}};
  io::Json list = io::Json::array();
  for (const auto& s : suites) {
    io::Json checks = io::Json::array();
    for (const auto& c : s.checks)
      checks.push_back({{"name", c.name}, {"value", c.value}, {"threshold", c.threshold},
                        {"bound", bound_name(c.bound)}, {"passed", c.passed()}});
    list.push_back({{"name", s.name}, {"passed", s.passed()}, {"checks", std::move(checks)}});
  }
  out["suites"] = std::move(list);
  out["passed"] = passed();
  if (wall_clock_seconds) out["wall_clock_seconds"] = *wall_clock_seconds;
  return out;
}

namespace {

struct CorpusInclusion {
  std::string name;
  MatrixAlgebra larger;
  MatrixAlgebra smaller;
};

std::vector<CorpusInclusion> inclusion_corpus() {
  return {
      {"scalars_in_m2", MatrixAlgebra::full(2), MatrixAlgebra::scalars(2)},
      {"diag_in_m2", MatrixAlgebra::full(2), MatrixAlgebra::diagonal(2)},
      {"m2_left_in_m4", MatrixAlgebra::full(4), MatrixAlgebra::left_factor(2, 2)},
      {"diag_in_m3", MatrixAlgebra::full(3), MatrixAlgebra::diagonal(3)},
  };
}

/// Faithful state whose log lies in sub, so the modular flow preserves sub.
StateDensity compatible_state(SeedStream& rng, const MatrixAlgebra& sub) {
  return StateDensity(trace_expectation(sub, random_density(rng, sub.ambient_dimension())));
}

StateDensity random_state(SeedStream& rng, Eigen::Index n) { return StateDensity(random_density(rng, n)); }

double max_of(double a, double b) { return std::max(a, b); }

// Dimension mismatch counts as a full failure of span equality.
double span_match(const OperatorSpan& a, const OperatorSpan& b) {
  const double r = span_equality_residual(a, b);
  return a.dimension() == b.dimension() ? r : std::max(r, 1.0);
}

int dim_at(const VerifyOptions& options, std::size_t k) {
  return options.dims.empty() ? 2 : options.dims[k % options.dims.size()];
}

// ----------------------------------------------------------------------------

SuiteResult suite_linalg(const VerifyOptions&, SeedStream& rng) {
  SuiteResult r{"linalg", {}};
  double recon = 0.0, ortho = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const Eigen::Index n = 2 + k % 31;
    const Matrix h = random_hermitian(rng, n);
    const auto sd = spectral_decompose(h);
    recon = max_of(recon, (sd.reconstruct() - h).norm() / std::max(1.0, h.norm()));
    ortho = max_of(ortho, (sd.eigenvectors.adjoint() * sd.eigenvectors - identity(n)).norm());
  }
  r.add("spectral_reconstruction", recon, 1e-12);
  r.add("eigenvector_orthonormality", ortho, 1e-12);

  double power_ends = 0.0, roundtrip = 0.0;
  for (int k = 0; k < 100; ++k) {
    const Eigen::Index n = 2 + k % 7;
    const Matrix rho = random_density(rng, n);
    power_ends = max_of(power_ends, (matrix_function(rho, MatrixFunction::power(0.0)) - identity(n)).norm());
    power_ends = max_of(power_ends, (matrix_function(rho, MatrixFunction::power(1.0)) - rho).norm());
    const Matrix back = matrix_function(matrix_function(rho, MatrixFunction::log()), MatrixFunction::exp());
    roundtrip = max_of(roundtrip, (back - rho).norm());
  }
  r.add("power_endpoints", power_ends, 1e-12);
  r.add("exp_log_roundtrip", roundtrip, 1e-11);

  double involution = 0.0, polar = 0.0;
  for (int k = 0; k < 30; ++k) {
    const GnsSpace gns(MatrixAlgebra::full(2 + k % 3), random_state(rng, 2 + k % 3));
    const ModularData md = tomita(gns);
    const AntilinearOperator rebuilt = md.conjugation.after_linear(md.delta_root);
    polar = max_of(polar, (rebuilt.matrix() - md.tomita.matrix()).norm());
    involution = max_of(involution, (md.conjugation.then_after(md.conjugation) - identity(gns.dimension())).norm());
  }
  r.add("polar_reconstruction", polar, 1e-10);
  r.add("polar_conjugation_involution", involution, 1e-10);

  double trace_kept = 0.0, min_eig = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 100; ++k) {
    const int a = 2 + k % 2, b = 2 + (k / 2) % 2;
    const Matrix rho = random_density(rng, a * b);
    const int dims[] = {a, b};
    const int keep_first[] = {0};
    const int keep_second[] = {1};
    for (const auto& reduced : {partial_trace(rho, dims, keep_first), partial_trace(rho, dims, keep_second)}) {
      trace_kept = max_of(trace_kept, std::abs(reduced.trace() - Complex(1.0, 0.0)));
      min_eig = std::min(min_eig, spectral_decompose(hermitian_part(reduced)).min_eigenvalue());
    }
  }
  r.add("partial_trace_preserves_trace", trace_kept, 1e-12);
  r.add("partial_trace_min_eigenvalue", min_eig, -1e-12, Bound::at_least);
  return r;
}

SuiteResult suite_algebra(const VerifyOptions& options, SeedStream& rng) {
  SuiteResult r{"algebra", {}};
  std::vector<MatrixAlgebra> algebras;
  for (std::size_t k = 0; k < options.dims.size(); ++k) {
    const int n = options.dims[k];
    algebras.push_back(MatrixAlgebra::scalars(n));
    algebras.push_back(MatrixAlgebra::full(n));
    algebras.push_back(MatrixAlgebra::diagonal(n).conjugated(random_unitary(rng, n)));
    if (n > 2) algebras.push_back(MatrixAlgebra::block_diagonal({1, n - 1}).conjugated(random_unitary(rng, n)));
    if (n == 4) algebras.push_back(MatrixAlgebra::left_factor(2, 2).conjugated(random_unitary(rng, 4)));
  }
  double double_commutant = 0.0, self_adjoint = 0.0, bimodule = 0.0;
  for (const auto& a : algebras) {
    double_commutant = max_of(double_commutant, span_match(commutant(commutant(a)).span(), a.span()));
    const auto n = a.ambient_dimension();
    const Matrix x = random_ginibre(rng, n, n), y = random_ginibre(rng, n, n);
    const Matrix ex = trace_expectation(a, x), ey = trace_expectation(a, y);
    self_adjoint = max_of(self_adjoint, std::abs((ex.adjoint() * y).trace() - (x.adjoint() * ey).trace()));
    for (const auto& p : a.basis())
      for (const auto& q : a.basis())
        bimodule = max_of(bimodule, (trace_expectation(a, p * x * q) - p * ex * q).norm());
  }
  r.add("double_commutant", double_commutant, 1e-10);
  r.add("trace_expectation_self_adjoint", self_adjoint, 1e-12);
  r.add("trace_expectation_bimodule", bimodule, 1e-10);

  // omega_expectation diagnostics pass exactly when the Takesaki criterion holds.
  double mismatches = 0.0, weakest_witness = std::numeric_limits<double>::infinity();
  double invariant_cases = 0.0, broken_cases = 0.0;
  for (int n : options.dims) {
    const MatrixAlgebra full = MatrixAlgebra::full(n);
    std::vector<MatrixAlgebra> subs{MatrixAlgebra::scalars(n), MatrixAlgebra::diagonal(n)};
    if (n > 2) subs.push_back(MatrixAlgebra::block_diagonal({1, n - 1}));
    if (n == 4) subs.push_back(MatrixAlgebra::left_factor(2, 2));
    for (const auto& sub : subs) {
      for (const auto& rho : {StateDensity::tracial(n), compatible_state(rng, sub), random_state(rng, n)}) {
        const auto check = takesaki_check(sub, rho);
        const auto oe = omega_expectation(sub, full, rho);
        if (oe.passes(1e-10) != check.invariant) mismatches += 1.0;
        if (check.invariant) {
          invariant_cases += 1.0;
        } else {
          broken_cases += 1.0;
          weakest_witness = std::min(weakest_witness, std::max(-oe.choi_min_eigenvalue, oe.bimodule));
        }
      }
    }
  }
  r.add("omega_expectation_matches_takesaki", mismatches, 0.0);
  r.add("takesaki_invariant_cases", invariant_cases, 1.0, Bound::at_least);
  r.add("takesaki_broken_cases", broken_cases, 1.0, Bound::at_least);
  r.add("broken_case_min_witness", weakest_witness, 1e-6, Bound::at_least);
  return r;
}

SuiteResult suite_golden_values(const VerifyOptions&, SeedStream& rng) {
  SuiteResult r{"golden-values", {}};
  const Superoperator e = trace_expectation(MatrixAlgebra::scalars(2));
  const Superoperator half = patha_map(e, 0.5).map;
  Matrix a = Matrix::Zero(2, 2);
  a(0, 0) = 1.0;
  Matrix once = Matrix::Zero(2, 2), twice = Matrix::Zero(2, 2);
  once.diagonal() << 0.75, 0.25;
  twice.diagonal() << 0.625, 0.375;
  r.add("half_step_on_projector", (half(a) - once).norm(), 1e-12);
  r.add("half_step_squared_on_projector", (half(half(a)) - twice).norm(), 1e-12);
  double single = 0.0, composed = 0.0;
  const Matrix one = identity(2);
  for (int k = 0; k < 100; ++k) {
    const Matrix x = random_ginibre(rng, 2, 2);
    single = max_of(single, (half(x) - (0.5 * x + 0.25 * x.trace() * one)).norm());
    composed = max_of(composed, (half(half(x)) - (0.25 * x + 0.375 * x.trace() * one)).norm());
  }
  r.add("half_step_random", single, 1e-12);
  r.add("half_step_squared_random", composed, 1e-12);
  const Matrix sx = pauli('X');
  const Matrix endpoint = unitary_exp(Matrix(std::numbers::pi / 2.0 * sx), 1.0);
  r.add("endpoint_unitary", (endpoint - Complex(0.0, -1.0) * sx).norm(), 1e-12);
  r.add("endpoint_matches_swap_up_to_phase", phase_distance(endpoint, sx), 1e-12);
  return r;
}

SuiteResult suite_tomita(const VerifyOptions& options, SeedStream& rng) {
  SuiteResult r{"tomita", {}};
  const double times[] = {-1.0, 0.5, 2.0};
  double adjoint = 0.0, commut = 0.0, flow = 0.0, kms = 0.0, vac_delta = 0.0, vac_j = 0.0;
  double j_delta_j = 0.0, delta_k = 0.0, kms_opposite = std::numeric_limits<double>::infinity();
  const int count = 200;
  for (int k = 0; k < count; ++k) {
    const int n = dim_at(options, static_cast<std::size_t>(k));
    const GnsSpace gns(MatrixAlgebra::full(n), random_state(rng, n));
    const ModularData md = tomita(gns);
    const auto res = modular_residuals(gns, md);
    adjoint = max_of(adjoint, res.adjoint_reproduction);
    vac_delta = max_of(vac_delta, res.vacuum_delta);
    vac_j = max_of(vac_j, res.vacuum_conjugation);
    j_delta_j = max_of(j_delta_j, res.j_delta_j);
    delta_k = max_of(delta_k, res.delta_vs_hamiltonian);
    const auto report = verify_commutation(gns, md, times);
    commut = max_of(commut, report.conjugation_residual);
    flow = max_of(flow, report.flow_residual);
    const Matrix a = random_ginibre(rng, n, n), b = random_ginibre(rng, n, n);
    kms = max_of(kms, kms_residual(gns, a, b));
    kms_opposite = std::min(kms_opposite, kms_residual_at(gns.state(), a, b, Complex(0.0, 1.0)));
  }
  r.add("tomita_reproduces_adjoint", adjoint, 1e-10);
  r.add("conjugation_maps_algebra_to_commutant", commut, 1e-10);
  r.add("modular_flow_invariance", flow, 1e-10);
  r.add("kms_residual", kms, 1e-8);
  r.add("vacuum_delta_invariant", vac_delta, 1e-12);
  r.add("vacuum_conjugation_invariant", vac_j, 1e-12);
  r.add("conjugation_inverts_delta", j_delta_j, 1e-10);
  r.add("delta_is_exp_minus_k", delta_k, 1e-10);
  r.add("kms_residual_at_opposite_point", kms_opposite, 0.0, Bound::report);

  double group = 0.0, rescale = 0.0, delta_change = 0.0;
  for (int k = 0; k < 20; ++k) {
    const int n = dim_at(options, static_cast<std::size_t>(k));
    const StateDensity rho = random_state(rng, n);
    const Matrix b = random_ginibre(rng, n, n);
    const double s = 0.3 + 0.1 * k, t = -0.7 + 0.05 * k;
    const Matrix lhs = modular_flow(rho, modular_flow(rho, b, Complex(s, 0.0)), Complex(t, 0.0));
    group = max_of(group, (lhs - modular_flow(rho, b, Complex(s + t, 0.0))).norm());
    const GnsSpace gns(MatrixAlgebra::full(n), rho);
    const ModularData unit = tomita(gns, HamiltonianScale::unit);
    const ModularData two_pi = tomita(gns, HamiltonianScale::two_pi);
    rescale = max_of(rescale, (unit.hamiltonian - 2.0 * std::numbers::pi * two_pi.hamiltonian).norm() /
                                  std::max(1.0, unit.hamiltonian.norm()));
    delta_change = max_of(delta_change, (unit.delta - two_pi.delta).norm() +
                                            (unit.conjugation.matrix() - two_pi.conjugation.matrix()).norm());
  }
  r.add("modular_flow_group_law", group, 1e-9);
  r.add("kappa_rescales_hamiltonian", rescale, 1e-12);
  r.add("kappa_leaves_delta_and_j_unchanged", delta_change, 0.0);
  return r;
}

SuiteResult suite_jones(const VerifyOptions&, SeedStream& rng) {
  SuiteResult r{"jones", {}};
  double identity_res = 0.0, extension = 0.0, proj = 0.0, commuting = 0.0, unitarity = 0.0, contains = 0.0;
  double transport_trivial = 0.0, transport_proper = 0.0;
  auto corpus = inclusion_corpus();
  corpus.push_back({"m2_in_m2", MatrixAlgebra::full(2), MatrixAlgebra::full(2)});
  for (const auto& entry : corpus) {
    const auto n = entry.larger.ambient_dimension();
    for (const auto& rho : {StateDensity::tracial(n), compatible_state(rng, entry.smaller)}) {
      const Inclusion inc(entry.larger, entry.smaller, rho);
      const GnsSpace gns(entry.larger, rho);
      const ModularData md = tomita(gns);
      const BasicExtension ext = basic_extension(inc, gns, md);
      const Matrix& e = ext.projection;
      identity_res = max_of(identity_res, jones_identity_residual(inc, gns, e));
      commuting = max_of(commuting, jones_commutation_residual(inc, gns, e));
      proj = max_of(proj, (e * e - e).norm() + (e - e.adjoint()).norm());
      extension = max_of(extension, ext.commutant_residual);
      contains = max_of(contains, ext.contains_larger);
      const CanonicalShift shift = canonical_shift(inc, gns, md, ext);
      unitarity = max_of(unitarity, shift.unitarity_residual);
      if (entry.smaller.dimension() == entry.larger.dimension())
        transport_trivial = max_of(transport_trivial, shift.max_transport());
      else
        transport_proper = max_of(transport_proper, shift.max_transport());
    }
  }
  r.add("jones_identity", identity_res, 1e-10);
  r.add("basic_extension_equals_reflected_commutant", extension, 1e-10);
  r.add("jones_projection_is_projection", proj, 1e-12);
  r.add("jones_projection_commutes_with_subalgebra", commuting, 1e-10);
  r.add("basic_extension_contains_larger", contains, 1e-10);
  r.add("canonical_shift_unitary", unitarity, 1e-10);
  r.add("transport_at_equal_algebras", transport_trivial, 1e-10);
  r.add("transport_proper_inclusions", transport_proper, 0.0, Bound::report);

  const StateDensity tr2 = StateDensity::tracial(2);
  const GnsSpace gns2(MatrixAlgebra::full(2), tr2);
  const Inclusion scalars(MatrixAlgebra::full(2), MatrixAlgebra::scalars(2), tr2);
  const Inclusion diag(MatrixAlgebra::full(2), MatrixAlgebra::diagonal(2), tr2);
  r.add("index_scalars_in_m2", index_estimate(gns2, jones_projection(scalars, gns2)).value_or(0.0), 0.0, Bound::report);
  r.add("index_diag_in_m2", index_estimate(gns2, jones_projection(diag, gns2)).value_or(0.0), 0.0, Bound::report);
  return r;
}

SuiteResult suite_patha(const VerifyOptions&, SeedStream& rng) {
  SuiteResult r{"patha", {}};
  double choi = std::numeric_limits<double>::infinity(), unital = 0.0, preserve = 0.0, closed = 0.0;
  double spectrum = 0.0, norm_excess = -1.0, self_adjoint = 0.0, ks = std::numeric_limits<double>::infinity();
  double endpoints = 0.0, midpoint = std::numeric_limits<double>::infinity();
  for (const auto& entry : inclusion_corpus()) {
    const auto n = entry.larger.ambient_dimension();
    for (const auto& rho : {StateDensity::tracial(n), compatible_state(rng, entry.smaller)}) {
      const Inclusion inc(entry.larger, entry.smaller, rho);
      const GnsSpace gns(entry.larger, rho);
      const Matrix e_n = jones_projection(inc, gns);
      const Superoperator& e = inc.expectation();
      for (int k = 0; k <= 20; ++k) {
        const double s = k / 20.0;
        const CpPathPoint point = patha_map(e, s);
        choi = std::min(choi, point.choi_min_eigenvalue);
        unital = max_of(unital, unitality_residual(point.map));
        preserve = max_of(preserve, omega_preservation_residual(point.map, rho));
        closed = max_of(closed, std::abs(patha_defect(e, s) - patha_defect_closed_form(e, s)));
        const Matrix op = patha_gns_operator(e_n, s);
        self_adjoint = max_of(self_adjoint, (op - op.adjoint()).norm());
        const RealVector eig = spectral_decompose(hermitian_part(op)).eigenvalues;
        for (Eigen::Index i = 0; i < eig.size(); ++i)
          spectrum = max_of(spectrum, std::min(std::abs(eig(i) - 1.0), std::abs(eig(i) - (1.0 - s))));
        norm_excess = max_of(norm_excess, operator_norm(op) - 1.0);
        for (int probe = 0; probe < 5; ++probe)
          ks = std::min(ks, kadison_schwarz_residual(point, rho, random_ginibre(rng, n, n)));
      }
      endpoints = max_of(endpoints, max_of(patha_defect(e, 0.0), patha_defect(e, 1.0)));
      midpoint = std::min(midpoint, patha_defect(e, 0.5));
    }
  }
  r.add("choi_min_eigenvalue", choi, -1e-10, Bound::at_least);
  r.add("unitality", unital, 1e-10);
  r.add("omega_preservation", preserve, 1e-10);
  r.add("defect_matches_closed_form", closed, 1e-12);
  r.add("gns_operator_spectrum", spectrum, 1e-12);
  r.add("gns_operator_norm_excess", norm_excess, 1e-12);
  r.add("gns_operator_self_adjoint", self_adjoint, 1e-12);
  r.add("kadison_schwarz_min_residual", ks, -1e-10, Bound::at_least);
  r.add("defect_at_endpoints", endpoints, 1e-12);
  r.add("defect_at_midpoint", midpoint, 1e-3, Bound::at_least);
  return r;
}

SuiteResult suite_tomiyama(const VerifyOptions& options, SeedStream& rng) {
  SuiteResult r{"tomiyama", {}};
  double hypotheses = 0.0, conclusions = 0.0, maps = 0.0, interior = std::numeric_limits<double>::infinity();
  double inconsistent = 0.0;
  for (int n : options.dims) {
    std::vector<MatrixAlgebra> subs{MatrixAlgebra::scalars(n), MatrixAlgebra::diagonal(n), MatrixAlgebra::full(n)};
    if (n > 2) subs.push_back(MatrixAlgebra::block_diagonal({1, n - 1}));
    if (n == 4) subs.push_back(MatrixAlgebra::left_factor(2, 2));
    const MatrixAlgebra full = MatrixAlgebra::full(n);
    for (const auto& base : subs) {
      const MatrixAlgebra sub = base.conjugated(random_unitary(rng, n));
      const StateDensity tracial = StateDensity::tracial(n);
      const StateDensity compatible = compatible_state(rng, sub);
      const std::pair<Superoperator, StateDensity> cases[] = {
          {trace_expectation(sub), tracial},
          {omega_expectation(sub, full, compatible).map, compatible},
      };
      for (const auto& [map, rho] : cases) {
        const TomiyamaReport report = verify_tomiyama(map, rho);
        maps += 1.0;
        for (const auto& h : report.hypotheses) hypotheses = max_of(hypotheses, h.residual);
        for (const auto& c : report.conclusions) conclusions = max_of(conclusions, c.residual);
        if (!report.consistent()) inconsistent += 1.0;
        if (sub.dimension() == full.dimension()) continue;
        for (int k = 1; k < 20; ++k) {
          const TomiyamaReport mid = verify_tomiyama(patha_map(map, k / 20.0).map, rho);
          if (!mid.consistent()) inconsistent += 1.0;
          interior = std::min(interior, mid.find("idempotent")->residual);
        }
      }
    }
  }
  r.add("corpus_maps", maps, 1.0, Bound::at_least);
  r.add("corpus_hypotheses", hypotheses, 1e-10);
  r.add("conclusions_given_hypotheses", conclusions, 1e-10);
  r.add("inconsistent_reports", inconsistent, 0.0);
  r.add("patha_interior_min_defect", interior, 1e-3, Bound::at_least);
  return r;
}

struct EndpointPair {
  StateDensity rho0;
  StateDensity rho1;
};

std::vector<EndpointPair> random_pairs(const VerifyOptions& options, SeedStream& rng, int count, bool commuting) {
  std::vector<EndpointPair> out;
  for (int k = 0; k < count; ++k) {
    const int n = dim_at(options, static_cast<std::size_t>(k));
    if (commuting) {
      const Matrix u = random_unitary(rng, n);
      auto diag_state = [&] {
        Matrix d = Matrix::Zero(n, n);
        double total = 0.0;
        for (int i = 0; i < n; ++i) {
          const double w = 0.05 + rng.uniform();
          d(i, i) = w;
          total += w;
        }
        return StateDensity(hermitian_part(u * (d / total) * u.adjoint()));
      };
      StateDensity a = diag_state();
      out.push_back({a, diag_state()});
    } else {
      StateDensity a = random_state(rng, n);
      out.push_back({a, random_state(rng, n)});
    }
  }
  return out;
}

SuiteResult suite_kprime(const VerifyOptions& options, SeedStream& rng) {
  SuiteResult r{"kprime", {}};
  double closed = 0.0, difference = 0.0;
  for (const auto& pair : random_pairs(options, rng, 100, false)) {
    const StatePath path(pair.rho0, pair.rho1, PathKind::log_linear);
    const Matrix target = -path.momentum();
    closed = max_of(closed, (traceless(path_hamiltonian(path, 0.0).derivative) - target).norm());
    difference = max_of(difference, (traceless(path_hamiltonian_difference(path, 0.0, 1e-4)) - target).norm());
  }
  r.add("loglinear_closed_form", closed, 1e-10);
  r.add("loglinear_central_difference", difference, 1e-6);

  const StatePath example(StateDensity::diagonal({0.5, 0.5}), StateDensity::diagonal({2.0 / 3.0, 1.0 / 3.0}),
                          PathKind::log_linear);
  const Matrix kp = traceless(path_hamiltonian(example, 0.0).derivative);
  const double half_ln2 = std::log(2.0) / 2.0;
  r.add("diagonal_example_value",
        std::abs(kp(0, 0) - Complex(-half_ln2, 0.0)) + std::abs(kp(1, 1) - Complex(half_ln2, 0.0)) +
            std::abs(kp(0, 1)) + std::abs(kp(1, 0)),
        1e-12);
  r.add("diagonal_example_matches_momentum", (kp + example.momentum()).norm(), 1e-10);

  double geodesic = 0.0;
  for (const auto& pair : random_pairs(options, rng, 30, true)) {
    const StatePath path(pair.rho0, pair.rho1, PathKind::geodesic);
    geodesic = max_of(geodesic, (traceless(path_hamiltonian(path, 0.0).derivative) + path.momentum()).norm());
  }
  r.add("geodesic_commuting_difference", geodesic, 1e-6);
  return r;
}

SuiteResult suite_generator(const VerifyOptions& options, SeedStream& rng) {
  SuiteResult r{"generator", {}};
  double constancy = 0.0, endpoint = 0.0, group = 0.0;
  for (const auto& pair : random_pairs(options, rng, 100, false)) {
    const StatePath path(pair.rho0, pair.rho1, PathKind::log_linear);
    const Matrix two_p = 2.0 * path.momentum();
    for (int k = 0; k <= 10; ++k) constancy = max_of(constancy, (path_generator(path, k / 10.0) - two_p).norm());
    const Matrix g1 = path_generator(path, 1.0);
    endpoint = max_of(endpoint, (unitary_exp(g1, 1.0) - unitary_exp(two_p, 1.0)).norm());
    const Matrix p = path.momentum();
    group = max_of(group, (unitary_exp(p, 0.6) * unitary_exp(p, 0.8) - unitary_exp(p, 1.4)).norm());
  }
  r.add("generator_equals_twice_momentum", constancy, 1e-10);
  r.add("endpoint_unitaries_agree", endpoint, 1e-10);
  r.add("shift_group_law", group, 1e-10);
  return r;
}

SuiteResult suite_cocycle(const VerifyOptions& options, SeedStream& rng) {
  SuiteResult r{"cocycle", {}};
  const double times[] = {0.5, 1.0, 2.0};
  double scaling = 0.0, kinds = 0.0, ends = 0.0, unitary = 0.0, rn_power = 0.0;
  for (const auto& pair : random_pairs(options, rng, 30, true)) {
    for (PathKind kind : {PathKind::log_linear, PathKind::geodesic}) {
      const StatePath path(pair.rho0, pair.rho1, kind);
      for (double s : {0.25, 0.5, 0.75}) scaling = max_of(scaling, cocycle_scaling_residual(path, s, times));
      ends = max_of(ends, (path.at(0.0).matrix() - pair.rho0.matrix()).norm() +
                              (path.at(1.0).matrix() - pair.rho1.matrix()).norm());
    }
    for (double s : {0.25, 0.5, 0.75}) kinds = max_of(kinds, kind_distance(pair.rho0, pair.rho1, s));
    const RnData rn = rn_data(pair.rho0, pair.rho1);
    // Commuting case: u_t = h^{it}.
    const auto h = spectral_decompose(rn.derivative);
    for (double t : times) rn_power = max_of(rn_power, (rn.cocycle(t) - complex_power(h, Complex(0.0, t))).norm());
  }
  r.add("cocycle_scaling_commuting", scaling, 1e-10);
  r.add("kinds_agree_commuting", kinds, 1e-10);
  r.add("endpoints_exact", ends, 1e-12);
  r.add("cocycle_is_derivative_power", rn_power, 1e-10);

  double noncommuting = 0.0, distance = 0.0;
  for (const auto& pair : random_pairs(options, rng, 10, false)) {
    const RnData rn = rn_data(pair.rho0, pair.rho1);
    for (double t : times) {
      const Matrix u = rn.cocycle(t);
      unitary = max_of(unitary, (u.adjoint() * u - identity(u.rows())).norm());
    }
    const StatePath path(pair.rho0, pair.rho1, PathKind::log_linear);
    noncommuting = max_of(noncommuting, cocycle_scaling_residual(path, 0.5, times));
    distance = max_of(distance, kind_distance(pair.rho0, pair.rho1, 0.5));
  }
  r.add("cocycle_unitary", unitary, 1e-10);
  r.add("cocycle_scaling_noncommuting", noncommuting, 0.0, Bound::report);
  r.add("kind_distance_noncommuting", distance, 0.0, Bound::report);
  return r;
}

SuiteResult suite_filtration(const VerifyOptions&, SeedStream& rng) {
  SuiteResult r{"filtration", {}};
  const Filtration chain({MatrixAlgebra::full(4), MatrixAlgebra::left_factor(2, 2), MatrixAlgebra::scalars(4)});
  const StateDensity product(kron(random_density(rng, 2), random_density(rng, 2)));
  double absorption = 0.0, nesting = 0.0, monotone = 0.0, boundary = 0.0;
  double substitute = std::numeric_limits<double>::infinity();
  for (const auto& rho : {StateDensity::tracial(4), product}) {
    const FiltrationReport report = filtration_check(chain, rho);
    absorption = max_of(absorption, report.absorption);
    nesting = max_of(nesting, report.nesting);
    monotone = max_of(monotone, report.monotonicity);
    boundary = max_of(boundary, report.boundary);
    substitute = std::min(substitute, report.patha_absorption);
  }
  r.add("absorption", absorption, 1e-10);
  r.add("range_nesting", nesting, 1e-10);
  r.add("projection_monotonicity", monotone, 1e-10);
  r.add("top_expectation_is_identity", boundary, 1e-10);
  r.add("patha_substitute_violation", substitute, 1e-2, Bound::at_least);
  return r;
}

SuiteResult suite_correlator(const VerifyOptions& options, SeedStream&) {
  SuiteResult r{"correlator", {}};
  struct Model {
    HamiltonianPreset preset;
    int sites;
  };
  const Model models[] = {{HamiltonianPreset::xx_chain, 3},
                          {HamiltonianPreset::xx_chain, 4},
                          {HamiltonianPreset::ising_tfield, 3},
                          {HamiltonianPreset::random_gue, 3}};
  const std::pair<const char*, const char*> operators[] = {{"Z@1", "Z@1"}, {"X@0", "Y@2"}};
  std::vector<double> grid;
  for (int k = 0; k <= 50; ++k) grid.push_back(k / 50.0);
  double derivative = 0.0, at_zero = 0.0, constant = 0.0, bounded = -1.0;
  for (const auto& m : models) {
    const Matrix h = preset_hamiltonian(m.preset, m.sites, options.seed);
    for (double beta : {0.5, 1.0}) {
      const TfdModel model(h, beta, m.sites, 2, is_translation_invariant(m.preset));
      const Matrix p = modular_momentum(model, {0, m.sites}, {1, m.sites});
      for (const auto& [left, right] : operators) {
        const Matrix ol = parse_site_operator(left, m.sites), orr = parse_site_operator(right, m.sites);
        const CorrelatorSeries series = correlator_scan(model, ol, orr, p, grid);
        derivative = max_of(derivative, std::abs(series.derivative_difference - series.derivative_commutator));
        at_zero = max_of(at_zero, std::abs(series.values.front() - series.static_correlator));
        const double cap = operator_norm(ol) * operator_norm(orr);
        for (const auto& v : series.values) bounded = max_of(bounded, std::abs(v) - cap);
        const CorrelatorSeries flat = correlator_scan(model, ol, identity(model.dimension()), p, grid);
        for (const auto& v : flat.values) constant = max_of(constant, std::abs(v - flat.values.front()));
      }
    }
  }
  r.add("derivative_identity", derivative, 1e-6);
  r.add("initial_value_is_static_correlator", at_zero, 1e-12);
  r.add("identity_operator_gives_constant", constant, 1e-12);
  r.add("bounded_by_operator_norms", bounded, 1e-12);
  return r;
}

SuiteResult suite_stability(const VerifyOptions&, SeedStream& rng) {
  SuiteResult r{"stability", {}};
  const Complex zs[] = {{0.0, 1.0}, {0.5, 0.5}, {-1.0, 1.0}, {2.0, 0.25}, {0.3, 2.0}};
  std::vector<double> grid;
  for (int k = 0; k <= 10; ++k) grid.push_back(k / 10.0);
  const std::pair<MatrixAlgebra, MatrixAlgebra> families[] = {
      {MatrixAlgebra::full(2), MatrixAlgebra::diagonal(2)},
      {MatrixAlgebra::full(3), MatrixAlgebra::diagonal(3)},
      {MatrixAlgebra::full(4), MatrixAlgebra::left_factor(2, 2)},
  };
  double violations = 0.0, checks = 0.0, at_zero = 0.0, loglinear = 0.0;
  std::vector<StabilityReport> reports;
  for (const auto& [larger, smaller] : families) {
    const StateDensity rho0 = random_state(rng, larger.ambient_dimension());
    const StatePath path = StatePath::toward_subalgebra(rho0, smaller, PathKind::geodesic);
    const StatePath flat = StatePath::toward_subalgebra(rho0, smaller, PathKind::log_linear);
    const GnsSpace gns(larger, rho0);
    const Matrix e_n = jones_projection(Inclusion(larger, smaller, rho0, ExpectationKind::trace), gns);
    for (const Complex& z : zs) {
      StabilityReport report = resolvent_stability(path, e_n, z, grid, 100, rng);
      violations += static_cast<double>(report.violations);
      checks += static_cast<double>(report.checks);
      at_zero = max_of(at_zero, report.rows.front().lhs);
      const StabilityReport flat_report = resolvent_stability(flat, e_n, z, grid, 10, rng);
      for (const auto& row : flat_report.rows) loglinear = max_of(loglinear, row.lhs);
      reports.push_back(std::move(report));
    }
  }
  const StabilityFit fit = fit_stability(reports);
  r.add("kato_violations", violations, 0.0);
  r.add("kato_checks", checks, 1500.0, Bound::at_least);
  r.add("deviation_at_zero", at_zero, 1e-12);
  r.add("loglinear_deviation", loglinear, 1e-10);
  r.add("fit_slope", fit.slope, 0.0, Bound::report);
  r.add("fit_r_squared", fit.r_squared, 0.0, Bound::report);
  return r;
}

SuiteResult suite_seed(const VerifyOptions&, SeedStream&) {
  SuiteResult r{"seed", {}};
  SeedStream a(12345), b(12345);
  double mismatches = 0.0;
  for (int k = 0; k < 1000; ++k)
    if (a.next_u64() != b.next_u64()) mismatches += 1.0;
  r.add("same_seed_same_stream", mismatches, 0.0);
  SeedStream one(1), two(2);
  int first_difference = 10;
  for (int k = 0; k < 10; ++k)
    if (one.next_u64() != two.next_u64()) {
      first_difference = k;
      break;
    }
  r.add("different_seeds_diverge_within_ten_draws", first_difference, 9.0);
  SeedStream x(7), y(7);
  const std::string first = io::dump(io::matrix_to_json(random_hermitian(x, 4)));
  const std::string second = io::dump(io::matrix_to_json(random_hermitian(y, 4)));
  r.add("random_hermitian_bytes_repeat", first == second ? 0.0 : 1.0, 0.0);
  return r;
}

using SuiteFn = std::function<SuiteResult(const VerifyOptions&, SeedStream&)>;

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
  static const std::vector<std::pair<std::string, SuiteFn>> suites = {
      {"linalg", suite_linalg},         {"algebra", suite_algebra},       {"golden-values", suite_golden_values},
      {"tomita", suite_tomita},         {"jones", suite_jones},           {"patha", suite_patha},
      {"tomiyama", suite_tomiyama},     {"kprime", suite_kprime},         {"generator", suite_generator},
      {"cocycle", suite_cocycle},       {"filtration", suite_filtration}, {"correlator", suite_correlator},
      {"stability", suite_stability},   {"seed", suite_seed},
  };
  return suites;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, fn] : registry()) out.push_back(name);
    return out;
  }();
  return names;
}

SuiteResult run_suite(const std::string& name, const VerifyOptions& options) {
  const auto& suites = registry();
  for (std::size_t k = 0; k < suites.size(); ++k) {
    if (suites[k].first != name) continue;
    // Each suite draws from its own stream so results do not depend on which others run.
    SeedStream rng = SeedStream(options.seed).fork(k + 1);
    return suites[k].second(options, rng);
  }
  throw ConfigError("unknown suite '" + name + "'");
}

RunReport run_verification(const std::vector<std::string>& suites, const VerifyOptions& options) {
  RunReport report;
  report.version = MODLAB_VERSION;
  report.options = options;
  const bool all = std::find(suites.begin(), suites.end(), "all") != suites.end();
  for (const auto& name : suites)
    if (name != "all" && std::find(suite_names().begin(), suite_names().end(), name) == suite_names().end())
      throw ConfigError("unknown suite '" + name + "'");
  for (const auto& name : suite_names())
    if (all || std::find(suites.begin(), suites.end(), name) != suites.end())
      report.suites.push_back(run_suite(name, options));
  return report;
}

}  // namespace modlab
