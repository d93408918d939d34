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

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "modlab/errors.hpp"
#include "modlab/io.hpp"
#include "modlab/random.hpp"
#include "support.hpp"

using namespace modlab;
using namespace testing_support;

namespace {

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "modlab_unit_io";
  std::filesystem::create_directories(dir);
  return dir / name;
}

double reparse(const std::string& text) {
  double value = 0.0;
  std::from_chars(text.data(), text.data() + text.size(), value);
  return value;
}

}  // namespace

TEST_CASE("doubles are written in shortest round-trip form") {
  Gen gen(71);
  for (int trial = 0; trial < 1000; ++trial) {
    const double x = gen.normal() * std::pow(10.0, gen.integer(-20, 20));
    CHECK(reparse(io::format_double(x)) == x);
  }
  CHECK(io::format_double(0.1) == "0.1");
  CHECK(io::format_double(-0.0) == "0");
  CHECK(io::format_double(1.0) == "1");
  CHECK(io::format_double(std::numeric_limits<double>::quiet_NaN()) == "nan");
  CHECK(io::format_double(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(io::format_double(-std::numeric_limits<double>::infinity()) == "-inf");
}

TEST_CASE("matrices round-trip bit-exactly through JSON text") {
  Gen gen(72);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix m = gen.ginibre(gen.integer(1, 5), gen.integer(1, 5));
    const io::Json parsed = io::Json::parse(io::dump(io::matrix_to_json(m)));
    CHECK(io::matrix_from_json(parsed) == m);
  }
}

TEST_CASE("malformed matrix JSON is a configuration error") {
  using io::Json;
  CHECK_THROWS_AS(io::matrix_from_json(Json::parse(R"({"rows":2})")), ConfigError);
  CHECK_THROWS_AS(io::matrix_from_json(Json::parse(R"({"rows":1,"cols":2,"data":[[1,0]]})")), ConfigError);
  CHECK_THROWS_AS(io::matrix_from_json(Json::parse(R"({"rows":1,"cols":1,"data":[[1]]})")), ConfigError);
  CHECK_THROWS_AS(io::matrix_from_json(Json::parse(R"({"rows":-1,"cols":1,"data":[]})")), ConfigError);
  CHECK_THROWS_AS(io::matrix_from_json(Json::parse(R"({"rows":1,"cols":1,"data":[["a",0]]})")), ConfigError);
}

TEST_CASE("algebras and inclusions round-trip") {
  Gen gen(73);
  const MatrixAlgebra a = MatrixAlgebra::block_diagonal({1, 2}).conjugated(gen.unitary(3));
  const MatrixAlgebra back = io::algebra_from_json(io::Json::parse(io::dump(io::algebra_to_json(a))));
  CHECK(back.dimension() == a.dimension());
  CHECK(span_equality_residual(back.span(), a.span()) <= 1e-12);
  const auto inc = io::inclusion_from_json(
      io::inclusion_to_json(MatrixAlgebra::full(4), MatrixAlgebra::left_factor(2, 2)));
  CHECK(inc.larger.dimension() == 16);
  CHECK(inc.smaller.dimension() == 4);
  // A non-closed spanning set is rejected on load.
  io::Json broken = io::algebra_to_json(MatrixAlgebra::diagonal(2));
  broken["basis"] = io::Json::array({io::matrix_to_json(pauli_x())});
  CHECK_THROWS(io::algebra_from_json(broken));
  CHECK_THROWS_AS(io::inclusion_from_json(io::Json::object()), ConfigError);
}

TEST_CASE("atomic writes and file reads") {
  const auto path = scratch("matrix.json");
  io::write_file_atomic(path, io::dump(io::matrix_to_json(identity(2))));
  CHECK_FALSE(std::filesystem::exists(path.string() + ".tmp"));
  CHECK(io::matrix_from_json(io::read_json_file(path)) == identity(2));
  CHECK_THROWS_AS(io::read_json_file(scratch("missing.json")), ConfigError);
  const auto bad = scratch("bad.json");
  std::ofstream(bad) << "{not json";
  CHECK_THROWS_AS(io::read_json_file(bad), ConfigError);
  CHECK_THROWS_AS(io::write_file_atomic(scratch("no_such_dir") / "x.json", "{}"), ConfigError);
}

TEST_CASE("CSV tables") {
  io::CsvTable table({"s", "value"});
  table.add_row({0.0, 0.25});
  table.add_row({0.5, -1e-20});
  CHECK(table.to_string() == "s,value\n0,0.25\n0.5,-1e-20\n");
  CHECK_THROWS_AS(table.add_row({1.0}), DimensionError);
}

TEST_CASE("seed streams are deterministic and forks are independent") {
  SeedStream a(5), b(5), c(6);
  for (int k = 0; k < 10; ++k) {
    const auto x = a.next_u64();
    CHECK(x == b.next_u64());
    CHECK(x != c.next_u64());
  }
  SeedStream base(5);
  SeedStream f1 = base.fork(1), f1b = base.fork(1), f2 = base.fork(2);
  CHECK(f1.next_u64() == f1b.next_u64());
  CHECK(f1.next_u64() != f2.next_u64());
  double sum = 0.0, sq = 0.0;
  SeedStream rng(9);
  const int samples = 20000;
  for (int k = 0; k < samples; ++k) {
    const double u = rng.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    const double z = rng.normal();
    sum += z;
    sq += z * z;
  }
  CHECK(std::abs(sum / samples) < 0.05);
  CHECK(std::abs(sq / samples - 1.0) < 0.05);
}

TEST_CASE("random matrix ensembles") {
  SeedStream rng(10);
  for (int n = 1; n <= 5; ++n) {
    const Matrix u = random_unitary(rng, n);
    CHECK((u.adjoint() * u - identity(n)).norm() <= 1e-12);
    const Matrix rho = random_density(rng, n);
    CHECK(std::abs(rho.trace() - 1.0) <= 1e-12);
    CHECK(spectral_decompose(rho).min_eigenvalue() >= 0.05 / n - 1e-12);
    CHECK(hermitian_defect(random_hermitian(rng, n)) == 0.0);
    CHECK(std::abs(random_unit_vector(rng, n).norm() - 1.0) <= 1e-12);
  }
}
