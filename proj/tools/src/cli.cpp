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

#include "modlab/cli.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <limits>
#include <optional>
#include <ostream>

#include <CLI11.hpp>

#include "modlab/errors.hpp"
#include "modlab/experiments.hpp"
#include "modlab/interpolation.hpp"
#include "modlab/io.hpp"
#include "modlab/jones.hpp"
#include "modlab/modular.hpp"
#include "modlab/random.hpp"
#include "modlab/verify.hpp"

namespace modlab::cli {

namespace {

using io::Json;

struct Globals {
  std::uint64_t seed = 1;
  double tol = 1e-10;
  std::string out;
  std::string kappa = "1";
  bool timing = false;
};

// Raised after outputs are written when an asserted check failed.
struct AssertionFailed {
  std::vector<std::string> failed;
};

double parse_number(std::string_view text, const std::string& what) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(value))
    throw ConfigError("invalid " + what + ": '" + std::string(text) + "'");
  return value;
}

Complex parse_complex(std::string spec) {
  spec.erase(std::remove_if(spec.begin(), spec.end(), [](unsigned char c) { return std::isspace(c); }), spec.end());
  if (spec.empty()) throw ConfigError("empty complex number");
  if (spec.back() != 'i') return Complex(parse_number(spec, "complex number"), 0.0);
  const std::string body = spec.substr(0, spec.size() - 1);
  std::size_t split = std::string::npos;
  for (std::size_t k = body.size(); k-- > 1;)
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  const std::string real = split == std::string::npos ? "" : body.substr(0, split);
  std::string imag = split == std::string::npos ? body : body.substr(split);
  if (imag.empty() || imag == "+") imag = "1";
  if (imag == "-") imag = "-1";
  if (!imag.empty() && imag.front() == '+') imag.erase(0, 1);
  return Complex(real.empty() ? 0.0 : parse_number(real, "complex number"), parse_number(imag, "complex number"));
}

HamiltonianScale parse_kappa(const std::string& kappa) {
  if (kappa == "1") return HamiltonianScale::unit;
  if (kappa == "2pi") return HamiltonianScale::two_pi;
  throw ConfigError("--kappa must be 1 or 2pi");
}

PathKind parse_kind(const std::string& kind) {
  if (kind == "loglinear") return PathKind::log_linear;
  if (kind == "geodesic") return PathKind::geodesic;
  throw ConfigError("--kind must be loglinear or geodesic");
}

Json checks_to_json(const SuiteResult& suite) {
  Json list = Json::array();
  for (const auto& c : suite.checks)
    list.push_back({{"name", c.name}, {"value", c.value}, {"threshold", c.threshold},
                    {"bound", c.bound == Bound::at_most ? "at_most" : c.bound == Bound::at_least ? "at_least" : "report"},
                    {"passed", c.passed()}});
  return list;
}

std::vector<std::string> failed_checks(const SuiteResult& suite) {
  std::vector<std::string> out;
  for (const auto& c : suite.checks)
    if (!c.passed()) out.push_back(suite.name + "." + c.name);
  return out;
}

Json spectrum_json(const RealVector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i) + 0.0);
  return out;
}

std::vector<std::string> columns(std::string_view header) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = header.find(',', start);
    out.emplace_back(header.substr(start, comma - start));
    if (comma == std::string_view::npos) return out;
    start = comma + 1;
  }
}

Json complex_json(Complex z) { return Json::array({z.real(), z.imag()}); }

class Command {
 public:
  Command(const Globals& globals, std::string name, std::ostream& out) : g_(globals), name_(std::move(name)), out_(out) {
    start_ = std::chrono::steady_clock::now();
  }

  Json base(Json config) const {
    config["seed"] = g_.seed;
    config["tol"] = g_.tol;
    config["kappa"] = g_.kappa;
    return Json{{"command", name_}, {"version", MODLAB_VERSION}, {"config", std::move(config)}};
  }

  void stamp(Json& report) const {
    if (g_.timing)
      report["wall_clock_seconds"] =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

  // JSON-only commands: the report goes to --out or the output stream.
  void emit_report(Json report, const SuiteResult& checks) const {
    report["checks"] = checks_to_json(checks);
    report["passed"] = checks.passed();
    stamp(report);
    write(g_.out, io::dump(report));
    if (!checks.passed()) throw AssertionFailed{failed_checks(checks)};
  }

  // Series commands: CSV to --out (or the output stream) plus a JSON sidecar next to it.
  void emit_series(const io::CsvTable& table, Json sidecar, const SuiteResult& checks) const {
    sidecar["columns"] = table.columns();
    sidecar["rows"] = table.size();
    sidecar["checks"] = checks_to_json(checks);
    sidecar["passed"] = checks.passed();
    stamp(sidecar);
    write(g_.out, table.to_string());
    if (!g_.out.empty()) io::write_file_atomic(sidecar_path(g_.out), io::dump(sidecar));
    if (!checks.passed()) throw AssertionFailed{failed_checks(checks)};
  }

  void write(const std::string& path, const std::string& contents) const {
    if (path.empty()) out_ << contents;
    else io::write_file_atomic(path, contents);
  }

  static std::filesystem::path sidecar_path(const std::filesystem::path& out) {
    std::filesystem::path p = out;
    if (p.extension() == ".json") p += ".sidecar.json";
    else p.replace_extension(".json");
    return p;
  }

 private:
  const Globals& g_;
  std::string name_;
  std::ostream& out_;
  std::chrono::steady_clock::time_point start_;
};

StateDensity load_state(const std::string& path) { return StateDensity(io::matrix_from_json(io::read_json_file(path))); }

// ---------------------------------------------------------------------------

struct TomitaArgs {
  std::string algebra, state;
};

void run_tomita(const Globals& g, const TomitaArgs& a, std::ostream& out) {
  Command cmd(g, "tomita", out);
  const MatrixAlgebra algebra = io::algebra_from_json(io::read_json_file(a.algebra));
  const StateDensity rho = load_state(a.state);
  const GnsSpace gns(algebra, rho);
  const ModularData md = tomita(gns, parse_kappa(g.kappa));
  const auto res = modular_residuals(gns, md);
  const double times[] = {-1.0, 0.5, 2.0};
  const auto comm = verify_commutation(gns, md, times);
  double kms = 0.0;
  for (const auto& x : algebra.basis())
    for (const auto& y : algebra.basis()) kms = std::max(kms, kms_residual(gns, x, y));

  SuiteResult checks{"tomita", {}};
  checks.add("tomita_reproduces_adjoint", res.adjoint_reproduction, g.tol);
  checks.add("conjugation_maps_algebra_to_commutant", comm.conjugation_residual, g.tol);
  checks.add("modular_flow_invariance", comm.flow_residual, g.tol);
  checks.add("kms_residual", kms, std::max(g.tol, 1e-8));
  checks.add("vacuum_delta_invariant", res.vacuum_delta, g.tol);
  checks.add("vacuum_conjugation_invariant", res.vacuum_conjugation, g.tol);
  checks.add("conjugation_involution", res.conjugation_involution, g.tol);
  checks.add("conjugation_inverts_delta", res.j_delta_j, g.tol);
  checks.add("delta_is_exp_minus_k", res.delta_vs_hamiltonian, g.tol);

  Json report = cmd.base({{"algebra", a.algebra}, {"state", a.state}});
  report["algebra_dimension"] = algebra.dimension();
  report["gns_dimension"] = gns.dimension();
  report["separating_margin"] = gns.separating_margin();
  report["delta_spectrum"] = spectrum_json(md.delta_spectrum.eigenvalues);
  report["hamiltonian_spectrum"] = spectrum_json(md.hamiltonian_spectrum());
  cmd.emit_report(std::move(report), checks);
}

struct JonesArgs {
  std::string inclusion, state;
};

void run_jones(const Globals& g, const JonesArgs& a, std::ostream& out) {
  Command cmd(g, "jones", out);
  const auto spec = io::inclusion_from_json(io::read_json_file(a.inclusion));
  const StateDensity rho = load_state(a.state);
  const Inclusion inc(spec.larger, spec.smaller, rho);
  const GnsSpace gns(spec.larger, rho);
  const ModularData md = tomita(gns, parse_kappa(g.kappa));
  const BasicExtension ext = basic_extension(inc, gns, md);
  const CanonicalShift shift = canonical_shift(inc, gns, md, ext);
  const TakesakiResult takesaki = takesaki_check(spec.smaller, rho);
  const Matrix& e = ext.projection;
  // The Jones identity and M_1 = J N' J presuppose an omega-preserving expectation.
  const Bound structural = takesaki.invariant ? Bound::at_most : Bound::report;
  const bool trivial = spec.smaller.dimension() == spec.larger.dimension();

  SuiteResult checks{"jones", {}};
  checks.add("jones_identity", jones_identity_residual(inc, gns, e), g.tol, structural);
  checks.add("basic_extension_equals_reflected_commutant", ext.commutant_residual, g.tol, structural);
  checks.add("jones_projection_is_projection", (e * e - e).norm() + (e - e.adjoint()).norm(), g.tol);
  checks.add("jones_projection_commutes_with_subalgebra", jones_commutation_residual(inc, gns, e), g.tol);
  checks.add("canonical_shift_unitary", shift.unitarity_residual, g.tol);
  checks.add("transport", shift.max_transport(), g.tol, trivial ? Bound::at_most : Bound::report);

  Json report = cmd.base({{"inclusion", a.inclusion}, {"state", a.state}});
  report["takesaki_invariant"] = takesaki.invariant;
  report["takesaki_residual"] = takesaki.residual;
  report["jones_projection_rank"] = static_cast<long>(std::lround(e.trace().real()));
  report["basic_extension_dimension"] = ext.algebra.dimension();
  const auto index = index_estimate(gns, e);
  report["index_estimate"] = index ? Json(*index) : Json(nullptr);
  report["transport_distances"] = shift.transport_distances;
  cmd.emit_report(std::move(report), checks);
}

struct PathaArgs {
  std::string inclusion, state, grid = "0:1:0.05", expectation = "omega";
  int probes = 20;
};

void run_patha(const Globals& g, const PathaArgs& a, std::ostream& out) {
  Command cmd(g, "patha", out);
  const auto spec = io::inclusion_from_json(io::read_json_file(a.inclusion));
  const StateDensity rho = load_state(a.state);
  if (a.probes < 1) throw ConfigError("--probes must be positive");
  const auto kind = a.expectation == "trace" ? ExpectationKind::trace : ExpectationKind::omega;
  const Inclusion inc(spec.larger, spec.smaller, rho, kind);
  const Superoperator& e = inc.expectation();
  const auto n = rho.dimension();
  const double c = operator_norm(identity(n * n) - e.matrix());
  SeedStream rng(g.seed);

  io::CsvTable table(columns(kPathaColumns));
  double choi = std::numeric_limits<double>::infinity(), ks = choi, closed = 0.0;
  for (double s : parse_grid(a.grid)) {
    if (s < 0.0 || s > 1.0) throw ConfigError("--grid must lie in [0, 1]");
    const CpPathPoint point = patha_map(e, s);
    double ks_min = std::numeric_limits<double>::infinity();
    for (int k = 0; k < a.probes; ++k)
      ks_min = std::min(ks_min, kadison_schwarz_residual(point, rho, random_ginibre(rng, n, n)));
    const double defect = patha_defect(e, s);
    closed = std::max(closed, std::abs(defect - patha_defect_closed_form(e, s)));
    choi = std::min(choi, point.choi_min_eigenvalue);
    ks = std::min(ks, ks_min);
    table.add_row({s, defect, point.choi_min_eigenvalue, ks_min});
  }
  SuiteResult checks{"patha", {}};
  checks.add("choi_min_eigenvalue", choi, -g.tol, Bound::at_least);
  checks.add("kadison_schwarz_min_residual", ks, -g.tol, Bound::at_least);
  // The closed form s(1-s)||id - E|| presupposes an idempotent E.
  const double idempotency = operator_norm(e.matrix() * e.matrix() - e.matrix());
  checks.add("defect_matches_closed_form", closed, g.tol, idempotency <= g.tol ? Bound::at_most : Bound::report);
  Json sidecar = cmd.base({{"inclusion", a.inclusion}, {"state", a.state}, {"grid", a.grid},
                           {"expectation", a.expectation}, {"probes", a.probes}});
  sidecar["id_minus_e_norm"] = c;
  sidecar["expectation_idempotency"] = idempotency;
  cmd.emit_series(table, std::move(sidecar), checks);
}

struct PathInputs {
  std::string state, inclusion;
  int dim = 3;
};

StatePath make_path(const Globals& g, const PathInputs& in, PathKind kind, MatrixAlgebra* sub_out = nullptr) {
  std::optional<StateDensity> rho0;
  if (!in.state.empty()) {
    rho0 = load_state(in.state);
  } else {
    if (in.dim < 2 || in.dim > 16) throw ConfigError("--dim must lie in [2, 16]");
    SeedStream rng(g.seed);
    rho0 = StateDensity(random_density(rng, in.dim));
  }
  const auto n = rho0->dimension();
  MatrixAlgebra sub = in.inclusion.empty() ? MatrixAlgebra::diagonal(n)
                                           : io::inclusion_from_json(io::read_json_file(in.inclusion)).smaller;
  if (sub.ambient_dimension() != n) throw ConfigError("inclusion and state dimensions differ");
  if (sub_out) *sub_out = sub;
  return StatePath::toward_subalgebra(*rho0, sub, kind);
}

Json path_config(const PathInputs& in) {
  return {{"state", in.state.empty() ? Json(nullptr) : Json(in.state)},
          {"inclusion", in.inclusion.empty() ? Json(nullptr) : Json(in.inclusion)},
          {"dim", in.dim}};
}

struct PathbArgs {
  PathInputs inputs;
  std::string kind = "loglinear", grid = "0:1:0.05";
};

void run_pathb(const Globals& g, const PathbArgs& a, std::ostream& out) {
  Command cmd(g, "pathb", out);
  const PathKind kind = parse_kind(a.kind);
  const HamiltonianScale scale = parse_kappa(g.kappa);
  const StatePath path = make_path(g, a.inputs, kind);
  const Matrix p = path.momentum(scale);
  const double times[] = {0.5, 1.0, 2.0};
  const double commutation = commutator(path.start().matrix(), path.end().matrix()).norm();

  io::CsvTable table(columns(kPathbColumns));
  double kprime_zero = 0.0, generator = 0.0;
  for (double s : parse_grid(a.grid)) {
    if (s < 0.0 || s > 1.0) throw ConfigError("--grid must lie in [0, 1]");
    const Matrix kp = traceless(path_hamiltonian(path, s, scale).derivative);
    const double kprime = (kp + p).norm();
    const double gen = (-2.0 * kp - 2.0 * p).norm();
    if (s == 0.0) kprime_zero = kprime;
    generator = std::max(generator, gen);
    table.add_row({s, kprime, gen, kind_distance(path.start(), path.end(), s),
                   cocycle_scaling_residual(path, s, times)});
  }
  SuiteResult checks{"pathb", {}};
  const double kprime_tol = kind == PathKind::log_linear ? g.tol : std::max(g.tol, 1e-6);
  const bool asserted = kind == PathKind::log_linear || commutation <= 1e-12;
  checks.add("kprime_at_zero_vs_negative_momentum", kprime_zero, kprime_tol, asserted ? Bound::at_most : Bound::report);
  checks.add("generator_vs_twice_momentum", generator, g.tol,
             kind == PathKind::log_linear ? Bound::at_most : Bound::report);
  Json sidecar = cmd.base(path_config(a.inputs));
  sidecar["config"]["kind"] = a.kind;
  sidecar["config"]["grid"] = a.grid;
  sidecar["endpoint_commutator_norm"] = commutation;
  sidecar["momentum_norm"] = operator_norm(p);
  cmd.emit_series(table, std::move(sidecar), checks);
}

struct FiltrationArgs {
  std::string chain, state;
};

void run_filtration(const Globals& g, const FiltrationArgs& a, std::ostream& out) {
  Command cmd(g, "filtration", out);
  std::vector<MatrixAlgebra> chain;
  if (a.chain.empty()) {
    chain = {MatrixAlgebra::full(4), MatrixAlgebra::left_factor(2, 2), MatrixAlgebra::scalars(4)};
  } else {
    const Json j = io::read_json_file(a.chain);
    if (!j.is_object() || !j.contains("chain") || !j["chain"].is_array() || j["chain"].empty())
      throw ConfigError("filtration: expected {\"chain\": [algebra, ...]}");
    for (const auto& alg : j["chain"]) chain.push_back(io::algebra_from_json(alg));
  }
  const Filtration filtration(chain);
  const auto n = chain.front().ambient_dimension();
  const StateDensity rho = a.state.empty() ? StateDensity::tracial(n) : load_state(a.state);
  const FiltrationReport r = filtration_check(filtration, rho);
  SuiteResult checks{"filtration", {}};
  checks.add("absorption", r.absorption, g.tol);
  checks.add("range_nesting", r.nesting, g.tol);
  checks.add("projection_monotonicity", r.monotonicity, g.tol);
  checks.add("top_expectation_is_identity", r.boundary, g.tol);
  checks.add("patha_substitute_violation", r.patha_absorption, 1e-2, Bound::report);
  Json report = cmd.base({{"chain", a.chain.empty() ? Json("default") : Json(a.chain)},
                          {"state", a.state.empty() ? Json("tracial") : Json(a.state)}});
  Json dims = Json::array();
  for (const auto& alg : chain) dims.push_back(alg.dimension());
  report["chain_dimensions"] = dims;
  cmd.emit_report(std::move(report), checks);
}

struct CorrelatorArgs {
  std::string preset = "xx-chain", hamiltonian, region_m, region_n, op_l = "Z@1", op_r = "Z@1";
  std::string grid = "0:1:0.02", fidelity_out;
  int sites = 4;
  double beta = 1.0;
};

void run_correlator(const Globals& g, const CorrelatorArgs& a, std::ostream& out) {
  Command cmd(g, "correlator", out);
  if (a.sites < 2 || a.sites > 8) throw ConfigError("--sites must lie in [2, 8]");
  Matrix h;
  bool invariant = false;
  if (!a.hamiltonian.empty()) {
    h = io::matrix_from_json(io::read_json_file(a.hamiltonian));
  } else {
    const auto preset = parse_preset(a.preset);
    if (!preset) throw ConfigError("unknown --preset '" + a.preset + "'");
    h = preset_hamiltonian(*preset, a.sites, g.seed);
    invariant = is_translation_invariant(*preset);
  }
  const TfdModel model(h, a.beta, a.sites, 2, invariant);
  const SiteRange m = a.region_m.empty() ? SiteRange{0, a.sites} : parse_site_range(a.region_m);
  const SiteRange n = a.region_n.empty() ? SiteRange{1, a.sites} : parse_site_range(a.region_n);
  const Matrix p = modular_momentum(model, m, n);
  const Matrix ol = parse_site_operator(a.op_l, a.sites), orr = parse_site_operator(a.op_r, a.sites);
  const auto grid = parse_grid(a.grid);
  const CorrelatorSeries series = correlator_scan(model, ol, orr, p, grid);

  io::CsvTable table(columns(kCorrelatorColumns));
  for (std::size_t k = 0; k < grid.size(); ++k) table.add_row({grid[k], series.values[k].real(), series.values[k].imag()});
  if (!a.fidelity_out.empty()) {
    io::CsvTable fidelity(columns(kFidelityColumns));
    for (double s : grid) fidelity.add_row({s, translation_fidelity(model, orr, p, s)});
    io::write_file_atomic(a.fidelity_out, fidelity.to_string());
  }
  const double derivative_gap = std::abs(series.derivative_difference - series.derivative_commutator);
  SuiteResult checks{"correlator", {}};
  checks.add("derivative_identity", derivative_gap, std::max(g.tol, 1e-6));
  double initial = 0.0;
  for (std::size_t k = 0; k < grid.size(); ++k)
    if (grid[k] == 0.0) initial = std::abs(series.values[k] - series.static_correlator);
  checks.add("initial_value_is_static_correlator", initial, g.tol);

  Json sidecar = cmd.base({{"preset", a.hamiltonian.empty() ? Json(a.preset) : Json(nullptr)},
                           {"hamiltonian", a.hamiltonian.empty() ? Json(nullptr) : Json(a.hamiltonian)},
                           {"sites", a.sites}, {"beta", a.beta},
                           {"region_m", std::to_string(m.begin) + ":" + std::to_string(m.end)},
                           {"region_n", std::to_string(n.begin) + ":" + std::to_string(n.end)},
                           {"op_l", a.op_l}, {"op_r", a.op_r}, {"grid", a.grid},
                           {"fidelity_out", a.fidelity_out.empty() ? Json(nullptr) : Json(a.fidelity_out)}});
  sidecar["static_correlator"] = complex_json(series.static_correlator);
  sidecar["derivative_finite_difference"] = complex_json(series.derivative_difference);
  sidecar["derivative_commutator"] = complex_json(series.derivative_commutator);
  sidecar["derivative_step"] = series.derivative_step;
  sidecar["momentum_norm"] = operator_norm(p);
  cmd.emit_series(table, std::move(sidecar), checks);
}

struct StabilityArgs {
  PathInputs inputs;
  std::string kind = "geodesic", z = "0+1i", grid = "0:1:0.1";
  int samples = 100;
};

void run_stability(const Globals& g, const StabilityArgs& a, std::ostream& out) {
  Command cmd(g, "stability", out);
  if (a.samples < 1) throw ConfigError("--samples must be positive");
  MatrixAlgebra sub = MatrixAlgebra::scalars(1);
  const StatePath path = make_path(g, a.inputs, parse_kind(a.kind), &sub);
  const auto n = path.start().dimension();
  const GnsSpace gns(MatrixAlgebra::full(n), path.start());
  const Matrix e_n = jones_projection(Inclusion(MatrixAlgebra::full(n), sub, path.start(), ExpectationKind::trace), gns);
  SeedStream rng = SeedStream(g.seed).fork(1);
  const Complex z = parse_complex(a.z);
  const StabilityReport report =
      resolvent_stability(path, e_n, z, parse_grid(a.grid), static_cast<std::size_t>(a.samples), rng);

  io::CsvTable table(columns(kStabilityColumns));
  for (const auto& row : report.rows) table.add_row({row.s, row.lhs, row.kato_rhs, row.proj_dist, row.fit_cz});
  SuiteResult checks{"stability", {}};
  checks.add("kato_violations", static_cast<double>(report.violations), 0.0);
  Json sidecar = cmd.base(path_config(a.inputs));
  sidecar["config"]["kind"] = a.kind;
  sidecar["config"]["z"] = complex_json(z);
  sidecar["config"]["samples"] = a.samples;
  sidecar["config"]["grid"] = a.grid;
  sidecar["spectral_distance"] = report.spectral_distance;
  sidecar["kato_checks"] = report.checks;
  sidecar["max_fit_Cz"] = report.max_cz;
  cmd.emit_series(table, std::move(sidecar), checks);
}

struct VerifyArgs {
  std::vector<std::string> suites{"all"};
  std::vector<int> dims{2, 3, 4};
};

void run_verify(const Globals& g, const VerifyArgs& a, std::ostream& out) {
  Command cmd(g, "verify", out);
  for (int d : a.dims)
    if (d < 2 || d > 6) throw ConfigError("--dims entries must lie in [2, 6]");
  VerifyOptions options;
  options.dims = a.dims;
  options.seed = g.seed;
  const auto start = std::chrono::steady_clock::now();
  RunReport report = run_verification(a.suites, options);
  if (g.timing) report.wall_clock_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  cmd.write(g.out, io::dump(report.to_json()));
  if (!report.passed()) {
    std::vector<std::string> failed;
    for (const auto& s : report.suites)
      for (const auto& f : failed_checks(s)) failed.push_back(f);
    throw AssertionFailed{failed};
  }
}

void print_error(std::ostream& err, const Json& j) { err << j.dump() << "\n"; }

}  // namespace

std::vector<double> parse_grid(const std::string& spec) {
  const auto first = spec.find(':');
  const auto second = first == std::string::npos ? std::string::npos : spec.find(':', first + 1);
  if (second == std::string::npos) throw ConfigError("grid must look like a:b:step, got '" + spec + "'");
  const std::string_view view = spec;
  const double a = parse_number(view.substr(0, first), "grid start");
  const double b = parse_number(view.substr(first + 1, second - first - 1), "grid end");
  const double step = parse_number(view.substr(second + 1), "grid step");
  if (!(step > 0.0) || b < a) throw ConfigError("grid needs step > 0 and end >= start");
  const double count = std::round((b - a) / step);
  if (count > 1e6) throw ConfigError("grid has too many points");
  const auto intervals = static_cast<long>(count);
  std::vector<double> out;
  if (intervals == 0) return {a};
  for (long k = 0; k <= intervals; ++k) out.push_back(k == intervals ? b : a + (b - a) * static_cast<double>(k) / static_cast<double>(intervals));
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"modlab: modular theory, Jones projections and interpolation paths for matrix algebras"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string(MODLAB_VERSION));

  Globals g;
  app.add_option("--seed", g.seed, "64-bit seed for every random draw")->capture_default_str();
  app.add_option("--tol", g.tol, "Threshold for asserted structural residuals")->capture_default_str();
  app.add_option("--out", g.out, "Output file (written atomically); standard output if omitted");
  app.add_option("--kappa", g.kappa, "Modular Hamiltonian convention: Delta = exp(-kappa K)")
      ->check(CLI::IsMember({"1", "2pi"}))
      ->capture_default_str();
  app.add_flag("--timing", g.timing, "Add wall-clock time to reports (makes them run-dependent)");

  TomitaArgs tomita_args;
  auto* tomita_cmd = app.add_subcommand("tomita", "Modular data (S, J, Delta, K) of an algebra and state; JSON report");
  tomita_cmd->add_option("--algebra", tomita_args.algebra, "Algebra JSON")->required()->check(CLI::ExistingFile);
  tomita_cmd->add_option("--state", tomita_args.state, "Density matrix JSON")->required()->check(CLI::ExistingFile);

  JonesArgs jones_args;
  auto* jones_cmd = app.add_subcommand("jones", "Jones projection, basic extension and canonical shift; JSON report");
  jones_cmd->add_option("--inclusion", jones_args.inclusion, "Inclusion JSON")->required()->check(CLI::ExistingFile);
  jones_cmd->add_option("--state", jones_args.state, "Density matrix JSON")->required()->check(CLI::ExistingFile);

  PathaArgs patha_args;
  auto* patha_cmd = app.add_subcommand("patha", "Convex path E_s = (1-s) id + s E over a grid; CSV series");
  patha_cmd->add_option("--inclusion", patha_args.inclusion, "Inclusion JSON")->required()->check(CLI::ExistingFile);
  patha_cmd->add_option("--state", patha_args.state, "Density matrix JSON")->required()->check(CLI::ExistingFile);
  patha_cmd->add_option("--grid", patha_args.grid, "s grid a:b:step")->capture_default_str();
  patha_cmd->add_option("--expectation", patha_args.expectation, "Expectation onto the smaller algebra")
      ->check(CLI::IsMember({"omega", "trace"}))
      ->capture_default_str();
  patha_cmd->add_option("--probes", patha_args.probes, "Random Kadison-Schwarz probes per grid point")->capture_default_str();
  patha_cmd->footer(std::string("CSV columns: ") + kPathaColumns + "\nA JSON sidecar is written next to --out.");

  PathbArgs pathb_args;
  auto* pathb_cmd = app.add_subcommand("pathb", "State path from rho_0 to its trace expectation; CSV series");
  pathb_cmd->add_option("--kind", pathb_args.kind, "Path kind")
      ->check(CLI::IsMember({"loglinear", "geodesic"}))
      ->capture_default_str();
  pathb_cmd->add_option("--state", pathb_args.inputs.state, "rho_0 JSON (random from --seed if omitted)")
      ->check(CLI::ExistingFile);
  pathb_cmd->add_option("--inclusion", pathb_args.inputs.inclusion, "Inclusion JSON; the smaller algebra is the target")
      ->check(CLI::ExistingFile);
  pathb_cmd->add_option("--dim", pathb_args.inputs.dim, "Dimension of the random rho_0")->capture_default_str();
  pathb_cmd->add_option("--grid", pathb_args.grid, "s grid a:b:step")->capture_default_str();
  pathb_cmd->footer(std::string("CSV columns: ") + kPathbColumns + "\nA JSON sidecar is written next to --out.");

  FiltrationArgs filtration_args;
  auto* filtration_cmd = app.add_subcommand("filtration", "Absorption and nesting along a chain of subalgebras; JSON report");
  filtration_cmd->add_option("--chain", filtration_args.chain, "JSON {\"chain\": [algebra, ...]}, largest first")
      ->check(CLI::ExistingFile);
  filtration_cmd->add_option("--state", filtration_args.state, "Density matrix JSON (tracial if omitted)")
      ->check(CLI::ExistingFile);

  CorrelatorArgs corr_args;
  auto* corr_cmd = app.add_subcommand("correlator", "Shifted thermofield-double correlator F(s); CSV series");
  corr_cmd->add_option("--preset", corr_args.preset, "xx-chain, ising-tfield or random-gue")->capture_default_str();
  corr_cmd->add_option("--hamiltonian", corr_args.hamiltonian, "Explicit Hamiltonian matrix JSON instead of a preset")
      ->check(CLI::ExistingFile);
  corr_cmd->add_option("--sites", corr_args.sites, "Number of qubits")->capture_default_str();
  corr_cmd->add_option("--beta", corr_args.beta, "Inverse temperature")->capture_default_str();
  corr_cmd->add_option("--region-m", corr_args.region_m, "Larger region a:b (default 0:L)");
  corr_cmd->add_option("--region-n", corr_args.region_n, "Smaller region a:b (default 1:L)");
  corr_cmd->add_option("--op-l", corr_args.op_l, "Left operator, e.g. Z@1 or X@0*X@1")->capture_default_str();
  corr_cmd->add_option("--op-r", corr_args.op_r, "Right operator")->capture_default_str();
  corr_cmd->add_option("--grid", corr_args.grid, "s grid a:b:step")->capture_default_str();
  corr_cmd->add_option("--fidelity-out", corr_args.fidelity_out, "Also write the translation fidelity series here");
  corr_cmd->footer(std::string("CSV columns: ") + kCorrelatorColumns + "\n--fidelity-out columns: " +
                   kFidelityColumns + "\nA JSON sidecar is written next to --out.");

  StabilityArgs stab_args;
  auto* stab_cmd = app.add_subcommand("stability", "Resolvent deviation along the generator family; CSV series");
  stab_cmd->add_option("--kind", stab_args.kind, "Path kind")
      ->check(CLI::IsMember({"loglinear", "geodesic"}))
      ->capture_default_str();
  stab_cmd->add_option("--z", stab_args.z, "Spectral parameter, e.g. 0+1i")->capture_default_str();
  stab_cmd->add_option("--samples", stab_args.samples, "Random unit vectors")->capture_default_str();
  stab_cmd->add_option("--grid", stab_args.grid, "s grid a:b:step")->capture_default_str();
  stab_cmd->add_option("--state", stab_args.inputs.state, "rho_0 JSON (random from --seed if omitted)")
      ->check(CLI::ExistingFile);
  stab_cmd->add_option("--inclusion", stab_args.inputs.inclusion, "Inclusion JSON; the smaller algebra is the target")
      ->check(CLI::ExistingFile);
  stab_cmd->add_option("--dim", stab_args.inputs.dim, "Dimension of the random rho_0")->capture_default_str();
  stab_cmd->footer(std::string("CSV columns: ") + kStabilityColumns + "\nA JSON sidecar is written next to --out.");

  VerifyArgs verify_args;
  auto* verify_cmd = app.add_subcommand("verify", "Run verification suites; JSON report");
  verify_cmd->add_option("--suite", verify_args.suites, "Suite names or 'all' (comma separated)")
      ->delimiter(',')
      ->capture_default_str();
  verify_cmd->add_option("--dims", verify_args.dims, "Matrix dimensions for random corpora")
      ->delimiter(',')
      ->capture_default_str();
  std::string suites_footer = "Suites:";
  for (const auto& name : suite_names()) suites_footer += " " + name;
  verify_cmd->footer(suites_footer);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << MODLAB_VERSION << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    print_error(err, {{"error", "config"}, {"message", e.what()}});
    return kExitConfig;
  }

  try {
    if (!(g.tol >= std::numeric_limits<double>::epsilon())) throw ConfigError("--tol must be at least machine epsilon");
    if (tomita_cmd->parsed()) run_tomita(g, tomita_args, out);
    else if (jones_cmd->parsed()) run_jones(g, jones_args, out);
    else if (patha_cmd->parsed()) run_patha(g, patha_args, out);
    else if (pathb_cmd->parsed()) run_pathb(g, pathb_args, out);
    else if (filtration_cmd->parsed()) run_filtration(g, filtration_args, out);
    else if (corr_cmd->parsed()) run_correlator(g, corr_args, out);
    else if (stab_cmd->parsed()) run_stability(g, stab_args, out);
    else if (verify_cmd->parsed()) run_verify(g, verify_args, out);
  } catch (const AssertionFailed& e) {
    print_error(err, {{"error", "assertion"}, {"failed", e.failed}});
    return kExitAssertion;
  } catch (const SingularityError& e) {
    print_error(err, {{"error", "singularity"}, {"message", e.what()}, {"eigenvalue", e.eigenvalue()}});
    return kExitSingularity;
  } catch (const Error& e) {
    print_error(err, {{"error", "config"}, {"message", e.what()}});
    return kExitConfig;
  } catch (const std::exception& e) {
    print_error(err, {{"error", "internal"}, {"message", e.what()}});
    return kExitAssertion;
  }
  return kExitOk;
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int k = 1; k < argc; ++k) args.emplace_back(argv[k]);
  return run(args, out, err);
}

}  // namespace modlab::cli
