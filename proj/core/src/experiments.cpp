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

#include "modlab/experiments.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>

#include <Eigen/LU>

#include "modlab/errors.hpp"
#include "modlab/tolerances.hpp"

namespace modlab {

std::optional<HamiltonianPreset> parse_preset(const std::string& name) {
  if (name == "xx-chain") return HamiltonianPreset::xx_chain;
  if (name == "ising-tfield") return HamiltonianPreset::ising_tfield;
  if (name == "random-gue") return HamiltonianPreset::random_gue;
  return std::nullopt;
}

std::string preset_name(HamiltonianPreset preset) {
  switch (preset) {
    case HamiltonianPreset::xx_chain: return "xx-chain";
    case HamiltonianPreset::ising_tfield: return "ising-tfield";
    case HamiltonianPreset::random_gue: return "random-gue";
  }
  return "unknown";
}

bool is_translation_invariant(HamiltonianPreset preset) { return preset != HamiltonianPreset::random_gue; }

Matrix pauli(char name) {
  Matrix p = Matrix::Zero(2, 2);
  switch (name) {
    case 'I': p(0, 0) = 1.0; p(1, 1) = 1.0; break;
    case 'X': p(0, 1) = 1.0; p(1, 0) = 1.0; break;
    case 'Y': p(0, 1) = Complex(0.0, -1.0); p(1, 0) = Complex(0.0, 1.0); break;
    case 'Z': p(0, 0) = 1.0; p(1, 1) = -1.0; break;
    default: throw ConfigError(std::string("unknown Pauli operator '") + name + "'");
  }
  return p;
}

namespace {

Eigen::Index chain_dimension(int sites, int local_dim) {
  Eigen::Index d = 1;
  for (int k = 0; k < sites; ++k) d *= local_dim;
  return d;
}

// sum over periodic bonds of the same Pauli on both ends.
Matrix bond_sum(char name, int sites) {
  const Eigen::Index dim = chain_dimension(sites, 2);
  Matrix h = Matrix::Zero(dim, dim);
  const Matrix pair = kron(pauli(name), pauli(name));
  const int bonds = sites > 2 ? sites : sites - 1;
  for (int j = 0; j < bonds; ++j) {
    int a = j, b = (j + 1) % sites;
    if (a > b) std::swap(a, b);
    const int factors[] = {a, b};
    h += embed_operator(pair, factors, sites, 2);
  }
  return h;
}

Matrix field_sum(char name, int sites) {
  const Eigen::Index dim = chain_dimension(sites, 2);
  Matrix h = Matrix::Zero(dim, dim);
  for (int j = 0; j < sites; ++j) {
    const int factors[] = {j};
    h += embed_operator(pauli(name), factors, sites, 2);
  }
  return h;
}

int parse_int(std::string_view text, const char* what) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) throw ConfigError(std::string("invalid ") + what + ": '" + std::string(text) + "'");
  return value;
}

}  // namespace

Matrix preset_hamiltonian(HamiltonianPreset preset, int sites, std::uint64_t seed) {
  if (sites < 1) throw DomainError("preset_hamiltonian: need at least one site");
  switch (preset) {
    case HamiltonianPreset::xx_chain: return bond_sum('X', sites) + bond_sum('Y', sites);
    case HamiltonianPreset::ising_tfield: return -bond_sum('Z', sites) - kIsingField * field_sum('X', sites);
    case HamiltonianPreset::random_gue: {
      SeedStream rng(seed);
      const Matrix a = random_ginibre(rng, chain_dimension(sites, 2), chain_dimension(sites, 2));
      return (a + a.adjoint()) / 2.0;
    }
  }
  throw DomainError("preset_hamiltonian: unknown preset");
}

Matrix parse_site_operator(const std::string& spec, int sites) {
  const Eigen::Index dim = chain_dimension(sites, 2);
  Matrix out = identity(dim);
  std::string_view rest = spec;
  if (rest.empty()) throw ConfigError("empty operator specification");
  while (!rest.empty()) {
    const auto star = rest.find('*');
    const std::string_view token = rest.substr(0, star);
    rest = star == std::string_view::npos ? std::string_view{} : rest.substr(star + 1);
    if (token == "I" || token == "1") continue;
    const auto at = token.find('@');
    if (at != 1) throw ConfigError("operator token must look like Z@1, got '" + std::string(token) + "'");
    const int site = parse_int(token.substr(2), "site index");
    if (site < 0 || site >= sites) throw ConfigError("operator site out of range: '" + std::string(token) + "'");
    const int factors[] = {site};
    out = out * embed_operator(pauli(token[0]), factors, sites, 2);
  }
  return out;
}

std::vector<int> SiteRange::sites() const {
  std::vector<int> out;
  for (int k = begin; k < end; ++k) out.push_back(k);
  return out;
}

SiteRange parse_site_range(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) throw ConfigError("site range must look like a:b, got '" + spec + "'");
  const std::string_view text = spec;
  SiteRange r{parse_int(text.substr(0, colon), "range start"), parse_int(text.substr(colon + 1), "range end")};
  if (r.begin < 0 || r.end < r.begin) throw ConfigError("invalid site range '" + spec + "'");
  return r;
}

TfdModel::TfdModel(Matrix hamiltonian, double beta, int sites, int local_dim, bool translation_invariant)
    : hamiltonian_(std::move(hamiltonian)),
      spectrum_(spectral_decompose(hamiltonian_)),
      beta_(beta),
      sites_(sites),
      local_dim_(local_dim),
      translation_invariant_(translation_invariant) {
  if (!(beta >= 0.0)) throw DomainError("build_tfd: beta must be non-negative");
  if (chain_dimension(sites, local_dim) != hamiltonian_.rows())
    throw DimensionError("build_tfd: Hamiltonian size does not match sites and local dimension");
  hamiltonian_ = hermitian_part(hamiltonian_);
  const double ground = spectrum_.min_eigenvalue();
  RealVector weights(spectrum_.eigenvalues.size());
  for (Eigen::Index i = 0; i < weights.size(); ++i)
    weights(i) = std::exp(-0.5 * beta * (spectrum_.eigenvalues(i) - ground));
  weights /= weights.norm();
  const Matrix& v = spectrum_.eigenvectors;
  state_ = v.conjugate() * weights.cast<Complex>().asDiagonal() * v.transpose();
}

Matrix TfdModel::right_density() const { return state_.transpose() * state_.conjugate(); }
Matrix TfdModel::left_density() const { return state_ * state_.adjoint(); }

Matrix TfdModel::gibbs_density() const {
  const double ground = spectrum_.min_eigenvalue();
  const double beta = beta_;
  Matrix g = spectrum_.apply([beta, ground](double e) { return Complex(std::exp(-beta * (e - ground)), 0.0); });
  return g / g.trace().real();
}

Complex TfdModel::two_sided(const Matrix& left, const Matrix& right) const {
  return (state_.adjoint() * left * state_ * right.transpose()).trace();
}

TfdModel build_tfd(const Matrix& hamiltonian, double beta, int sites, int local_dim, bool translation_invariant) {
  return TfdModel(hamiltonian, beta, sites, local_dim, translation_invariant);
}

Matrix modular_momentum(const TfdModel& model, const SiteRange& region_m, const SiteRange& region_n) {
  if (region_m.end > model.sites() || region_m.begin >= region_m.end)
    throw DomainError("modular_momentum: region M must be a non-empty range inside the chain");
  if (!region_m.contains(region_n)) throw DomainError("modular_momentum: region N must lie inside region M");
  const std::vector<int> dims(static_cast<std::size_t>(model.sites()), model.local_dim());
  const Matrix rho = model.right_density();
  const auto m_sites = region_m.sites();
  const auto n_sites = region_n.sites();
  const Matrix k_m = -matrix_function(partial_trace(rho, dims, m_sites), MatrixFunction::log());
  const Matrix k_n = -matrix_function(partial_trace(rho, dims, n_sites), MatrixFunction::log());
  std::vector<int> n_inside;
  for (int site : n_sites) n_inside.push_back(site - region_m.begin);
  const Matrix k_n_lifted = embed_operator(k_n, n_inside, static_cast<int>(m_sites.size()), model.local_dim());
  return embed_operator(traceless(k_m - k_n_lifted), m_sites, model.sites(), model.local_dim());
}

Complex correlator_value(const TfdModel& model, const Matrix& op_left, const Matrix& op_right,
                         const SpectralDecomposition& momentum, double s) {
  const Matrix u = unitary_exp(momentum, 2.0 * s);
  return model.two_sided(op_left, u * op_right * u.adjoint());
}

CorrelatorSeries correlator_scan(const TfdModel& model, const Matrix& op_left, const Matrix& op_right,
                                 const Matrix& momentum, std::span<const double> grid, double step) {
  if (!(step > 0.0)) throw DomainError("correlator_scan: step must be positive");
  const SpectralDecomposition spectrum = spectral_decompose(momentum);
  CorrelatorSeries out;
  out.grid.assign(grid.begin(), grid.end());
  for (double s : grid) out.values.push_back(correlator_value(model, op_left, op_right, spectrum, s));
  out.static_correlator = model.two_sided(op_left, op_right);
  auto central = [&](double h) {
    return (correlator_value(model, op_left, op_right, spectrum, h) -
            correlator_value(model, op_left, op_right, spectrum, -h)) / (2.0 * h);
  };
  // Richardson: the O(h^2) terms of the two central differences cancel.
  out.derivative_difference = (4.0 * central(step / 2.0) - central(step)) / 3.0;
  out.derivative_commutator = Complex(0.0, -2.0) * model.two_sided(op_left, commutator(momentum, op_right));
  out.derivative_step = step;
  return out;
}

Matrix fractional_translation(int sites, int local_dim, double shift) {
  const Eigen::Index dim = chain_dimension(sites, local_dim);
  // One-site cyclic shift: the content of site j moves to site j + 1.
  Matrix shift_op = Matrix::Zero(dim, dim);
  const Eigen::Index top = dim / local_dim;
  for (Eigen::Index x = 0; x < dim; ++x) {
    const Eigen::Index last = x % local_dim;
    shift_op(last * top + x / local_dim, x) = 1.0;
  }
  std::vector<Matrix> powers{identity(dim)};
  for (int j = 1; j < sites; ++j) powers.push_back(shift_op * powers.back());
  Matrix out = Matrix::Zero(dim, dim);
  const double two_pi = 2.0 * std::numbers::pi;
  for (int k = -((sites - 1) / 2); k <= sites / 2; ++k) {
    Matrix projector = Matrix::Zero(dim, dim);
    for (int j = 0; j < sites; ++j) projector += std::polar(1.0, -two_pi * k * j / sites) * powers[j];
    out += std::polar(1.0, two_pi * k * shift / sites) * projector / static_cast<double>(sites);
  }
  return out;
}

double translation_fidelity(const TfdModel& model, const Matrix& op_right, const Matrix& momentum, double s) {
  if (!model.translation_invariant())
    throw DomainError("translation_fidelity: model is not translation invariant");
  const double norm2 = op_right.squaredNorm();
  if (norm2 == 0.0) throw DomainError("translation_fidelity: zero operator");
  const Matrix u = unitary_exp(momentum, 2.0 * s);
  const Matrix t = fractional_translation(model.sites(), model.local_dim(), 2.0 * s);
  const Matrix shifted = u * op_right * u.adjoint();
  const Matrix translated = t * op_right * t.adjoint();
  return std::abs((shifted.adjoint() * translated).trace()) / norm2;
}

StabilityReport resolvent_stability(const StatePath& path, const Matrix& projection, Complex z,
                                    std::span<const double> grid, std::size_t samples, SeedStream& rng) {
  if (z.imag() == 0.0) throw DomainError("resolvent_stability: z must lie off the real axis");
  StabilityReport report;
  report.z = z;
  const RealVector momentum_spectrum = spectral_decompose(path.momentum()).eigenvalues;
  report.spectral_distance = std::numeric_limits<double>::infinity();
  for (Eigen::Index k = 0; k < momentum_spectrum.size(); ++k)
    report.spectral_distance = std::min(report.spectral_distance, std::abs(z - 2.0 * momentum_spectrum(k)));
  if (report.spectral_distance < 1e-6)
    throw SingularityError("resolvent_stability: z is too close to the spectrum of 2P", report.spectral_distance);

  const Matrix g0 = path_generator(path, 0.0);
  const auto n = g0.rows();
  Matrix probes(n, static_cast<Eigen::Index>(samples));
  for (Eigen::Index k = 0; k < probes.cols(); ++k) probes.col(k) = random_unit_vector(rng, n);
  const Matrix base = Eigen::PartialPivLU<Matrix>(g0 - z * identity(n)).solve(probes);
  const double im2 = z.imag() * z.imag();
  const Matrix one = identity(projection.rows());

  for (double s : grid) {
    StabilityRow row;
    row.s = s;
    const Matrix gs = path_generator(path, s);
    const Matrix moved = Eigen::PartialPivLU<Matrix>(gs - z * identity(n)).solve(probes);
    row.kato_rhs = operator_norm(gs - g0) / im2;
    for (Eigen::Index k = 0; k < probes.cols(); ++k) {
      const double lhs = (moved.col(k) - base.col(k)).norm();
      row.lhs = std::max(row.lhs, lhs);
      ++report.checks;
      if (lhs > row.kato_rhs + tol::structural) ++report.violations;
    }
    row.proj_dist = operator_norm(patha_gns_operator(projection, s) - one);
    row.fit_cz = row.proj_dist > 0.0 ? row.lhs / row.proj_dist : 0.0;
    report.max_cz = std::max(report.max_cz, row.fit_cz);
    report.rows.push_back(row);
  }
  return report;
}

StabilityFit fit_stability(std::span<const StabilityReport> reports) {
  StabilityFit fit;
  double sxy = 0.0, sxx = 0.0, mean = 0.0;
  for (const auto& r : reports) {
    const double x = 1.0 / r.spectral_distance;
    sxy += x * r.max_cz;
    sxx += x * x;
    mean += r.max_cz;
  }
  if (reports.empty() || sxx == 0.0) return fit;
  mean /= static_cast<double>(reports.size());
  fit.slope = sxy / sxx;
  double ss_res = 0.0, ss_tot = 0.0;
  for (const auto& r : reports) {
    const double residual = r.max_cz - fit.slope / r.spectral_distance;
    ss_res += residual * residual;
    ss_tot += (r.max_cz - mean) * (r.max_cz - mean);
  }
  fit.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : (ss_res == 0.0 ? 1.0 : 0.0);
  return fit;
}

}  // namespace modlab
