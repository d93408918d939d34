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

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "modlab/cli.hpp"
#include "modlab/errors.hpp"
#include "modlab/io.hpp"

using namespace modlab;

namespace {

const std::string kData = MODLAB_DATA_DIR;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "modlab_unit_cli";
  std::filesystem::create_directories(dir);
  return dir / name;
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string first_line(const std::string& text) { return text.substr(0, text.find('\n')); }

std::vector<std::vector<double>> parse_csv(const std::string& text) {
  std::vector<std::vector<double>> rows;
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    std::vector<double> row;
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

TEST_CASE("grid parsing") {
  CHECK(cli::parse_grid("0:1:0.25") == std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0});
  const auto thirds = cli::parse_grid("0:1:0.3");
  REQUIRE(thirds.size() == 4);
  CHECK(thirds.back() == 1.0);
  CHECK(cli::parse_grid("0.5:0.5:0.1") == std::vector<double>{0.5});
  CHECK(cli::parse_grid("0:1:0.05").size() == 21);
  CHECK_THROWS_AS(cli::parse_grid("0:1"), ConfigError);
  CHECK_THROWS_AS(cli::parse_grid("0:1:0"), ConfigError);
  CHECK_THROWS_AS(cli::parse_grid("1:0:0.1"), ConfigError);
  CHECK_THROWS_AS(cli::parse_grid("a:1:0.1"), ConfigError);
}

TEST_CASE("help lists the CSV columns and exits 0") {
  const auto top = invoke({"--help"});
  CHECK(top.code == cli::kExitOk);
  CHECK(top.out.find("verify") != std::string::npos);
  const auto patha = invoke({"patha", "--help"});
  CHECK(patha.code == cli::kExitOk);
  CHECK(patha.out.find(cli::kPathaColumns) != std::string::npos);
  const auto corr = invoke({"correlator", "--help"});
  CHECK(corr.out.find(cli::kCorrelatorColumns) != std::string::npos);
  CHECK(corr.out.find(cli::kFidelityColumns) != std::string::npos);
  CHECK(invoke({"stability", "--help"}).out.find(cli::kStabilityColumns) != std::string::npos);
  CHECK(invoke({"pathb", "--help"}).out.find(cli::kPathbColumns) != std::string::npos);
}

TEST_CASE("configuration errors exit 2 with a JSON message") {
  const auto missing = invoke({"tomita", "--algebra", "does_not_exist.json", "--state", kData + "/tracial2.json"});
  CHECK(missing.code == cli::kExitConfig);
  const auto err = io::Json::parse(missing.err);
  CHECK(err["error"] == "config");
  CHECK(err["message"].is_string());
  CHECK(invoke({}).code == cli::kExitConfig);
  CHECK(invoke({"frobnicate"}).code == cli::kExitConfig);
  CHECK(invoke({"--kappa", "3", "filtration"}).code == cli::kExitConfig);
  CHECK(invoke({"--tol", "1e-300", "filtration"}).code == cli::kExitConfig);
  CHECK(invoke({"pathb", "--grid", "0:2:0.5"}).code == cli::kExitConfig);
  CHECK(invoke({"stability", "--z", "1.5"}).code == cli::kExitConfig);
  CHECK(invoke({"verify", "--suite", "nope"}).code == cli::kExitConfig);
  CHECK(invoke({"correlator", "--preset", "random-gue", "--fidelity-out", scratch("f.csv").string()}).code ==
        cli::kExitConfig);
  // Dimension mismatch between the inclusion and the state.
  CHECK(invoke({"jones", "--inclusion", kData + "/m2_diag.json", "--state", kData + "/tracial3.json"}).code ==
        cli::kExitConfig);
}

TEST_CASE("a non-faithful state exits 3") {
  const auto pure = scratch("pure.json");
  io::write_file_atomic(pure, R"({"rows":2,"cols":2,"data":[[1,0],[0,0],[0,0],[0,0]]})");
  const auto r = invoke({"tomita", "--algebra", kData + "/m2_full.json", "--state", pure.string()});
  CHECK(r.code == cli::kExitSingularity);
  CHECK(io::Json::parse(r.err)["error"] == "singularity");
}

TEST_CASE("a failed assertion exits 1 and names the checks") {
  const auto r = invoke({"--tol", "2.3e-16", "tomita", "--algebra", kData + "/m2_full.json", "--state",
                         kData + "/thermal2.json"});
  CHECK(r.code == cli::kExitAssertion);
  const auto err = io::Json::parse(r.err);
  CHECK(err["error"] == "assertion");
  CHECK(err["failed"].size() >= 1);
  // The report is still written.
  CHECK(io::Json::parse(r.out)["passed"] == false);
}

TEST_CASE("patha on C in M2 at the tracial state gives s(1-s)c") {
  const auto out = scratch("patha.csv");
  const auto r = invoke({"--out", out.string(), "patha", "--inclusion", kData + "/m2_scalars.json", "--state",
                         kData + "/tracial2.json", "--grid", "0:1:0.25"});
  REQUIRE(r.code == cli::kExitOk);
  const std::string csv = slurp(out);
  CHECK(first_line(csv) == cli::kPathaColumns);
  const auto sidecar = io::read_json_file(scratch("patha.json"));
  const double c = sidecar["id_minus_e_norm"].get<double>();
  CHECK(c == doctest::Approx(1.0).epsilon(1e-12));
  const auto rows = parse_csv(csv);
  const std::vector<double> factors{0.0, 0.1875, 0.25, 0.1875, 0.0};
  REQUIRE(rows.size() == factors.size());
  for (std::size_t k = 0; k < rows.size(); ++k) CHECK(std::abs(rows[k][1] - factors[k] * c) <= 1e-12);
  CHECK(sidecar["config"]["seed"] == 1);
  CHECK(sidecar["version"].is_string());
  CHECK(sidecar["passed"] == true);
}

TEST_CASE("series subcommands write their documented headers") {
  const auto pathb = invoke({"pathb", "--grid", "0:1:0.5"});
  CHECK(pathb.code == cli::kExitOk);
  CHECK(first_line(pathb.out) == cli::kPathbColumns);
  const auto fidelity = scratch("fidelity.csv");
  const auto corr = invoke({"correlator", "--sites", "3", "--grid", "0:1:0.5", "--fidelity-out", fidelity.string()});
  CHECK(corr.code == cli::kExitOk);
  CHECK(first_line(corr.out) == cli::kCorrelatorColumns);
  CHECK(first_line(slurp(fidelity)) == cli::kFidelityColumns);
  const auto stab = invoke({"stability", "--samples", "10", "--grid", "0:1:0.5", "--z", "0.5-2i"});
  CHECK(stab.code == cli::kExitOk);
  CHECK(first_line(stab.out) == cli::kStabilityColumns);
  CHECK(parse_csv(stab.out).size() == 3);
}

TEST_CASE("JSON reports of the structural subcommands") {
  const auto tomita = invoke({"tomita", "--algebra", kData + "/m2_full.json", "--state", kData + "/thermal2.json"});
  REQUIRE(tomita.code == cli::kExitOk);
  const auto t = io::Json::parse(tomita.out);
  CHECK(t["delta_spectrum"].size() == 4);
  CHECK(t["hamiltonian_spectrum"].size() == 4);
  const auto jones = invoke({"jones", "--inclusion", kData + "/m2_diag.json", "--state", kData + "/tracial2.json"});
  REQUIRE(jones.code == cli::kExitOk);
  const auto j = io::Json::parse(jones.out);
  CHECK(j["jones_projection_rank"] == 2);
  CHECK(j["basic_extension_dimension"] == 8);
  CHECK(j["index_estimate"].get<double>() == doctest::Approx(2.0));
  const auto filtration =
      invoke({"filtration", "--chain", kData + "/chain_m4.json", "--state", kData + "/tracial4.json"});
  CHECK(filtration.code == cli::kExitOk);
  CHECK(io::Json::parse(filtration.out)["chain_dimensions"] == io::Json::array({16, 4, 1}));
}

TEST_CASE("identical invocations produce identical bytes") {
  const std::vector<std::string> args{"--seed", "3", "verify", "--suite", "linalg,patha,seed", "--dims", "2,3"};
  const auto a = invoke(args), b = invoke(args);
  CHECK(a.code == cli::kExitOk);
  CHECK(a.out == b.out);
  const auto c = invoke({"--seed", "4", "verify", "--suite", "linalg,patha,seed", "--dims", "2,3"});
  CHECK(c.out != a.out);
  const auto timed = invoke({"--timing", "verify", "--suite", "linalg", "--dims", "2"});
  CHECK(io::Json::parse(timed.out).contains("wall_clock_seconds"));
}
