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

#include <string>
#include <vector>

#include "modlab/errors.hpp"
#include "modlab/jones.hpp"
#include "support.hpp"

using namespace modlab;
using namespace testing_support;

namespace {

struct Case {
  std::string label;
  MatrixAlgebra larger;
  MatrixAlgebra smaller;
  StateDensity state;
  Eigen::Index extension_dimension;
  double index;
};

// Inclusions with states that leave the smaller algebra invariant under the
// modular flow. Extension dimensions: M_1 = J N' J on the GNS space.
std::vector<Case> corpus() {
  return {
      {"C in M2", MatrixAlgebra::full(2), MatrixAlgebra::scalars(2), StateDensity::diagonal({0.7, 0.3}), 16, 4.0},
      {"diag in M2", MatrixAlgebra::full(2), MatrixAlgebra::diagonal(2), StateDensity::diagonal({0.7, 0.3}), 8, 2.0},
      {"M2 x 1 in M4", MatrixAlgebra::full(4), MatrixAlgebra::left_factor(2, 2), StateDensity::tracial(4), 64, 4.0},
      {"diag in M3", MatrixAlgebra::full(3), MatrixAlgebra::diagonal(3), StateDensity::diagonal({0.5, 0.3, 0.2}), 27,
       3.0},
  };
}

}  // namespace

TEST_CASE("inclusions are validated") {
  Gen gen(41);
  const MatrixAlgebra rotated = MatrixAlgebra::diagonal(3).conjugated(gen.unitary(3));
  CHECK_THROWS_AS(Inclusion(MatrixAlgebra::diagonal(3), rotated, StateDensity::tracial(3)), StructureError);
  CHECK_THROWS_AS(Inclusion(MatrixAlgebra::full(2), MatrixAlgebra::scalars(2), StateDensity::tracial(3)),
                  DimensionError);
  const Inclusion ok(MatrixAlgebra::full(3), rotated, StateDensity::tracial(3));
  CHECK(ok.inclusion_residual() <= 1e-12);
}

TEST_CASE("Jones projection onto [N Omega]") {
  Gen gen(42);
  for (const auto& c : corpus()) {
    CAPTURE(c.label);
    const Inclusion inc(c.larger, c.smaller, c.state);
    const GnsSpace gns(c.larger, c.state);
    const Matrix e = jones_projection(inc, gns);
    CHECK((e * e - e).norm() <= 1e-12);
    CHECK((e - e.adjoint()).norm() <= 1e-12);
    CHECK(std::abs(e.trace().real() - static_cast<double>(c.smaller.dimension())) <= 1e-10);
    // e_N (x Omega) = E(x) Omega
    const Matrix x = gen.ginibre(c.larger.ambient_dimension(), c.larger.ambient_dimension());
    CHECK((e * gns.vector_of(x) - gns.vector_of(inc.expectation()(x))).norm() <= 1e-10);
    CHECK(jones_commutation_residual(inc, gns, e) <= 1e-10);
  }
}

TEST_CASE("Jones identity and basic extension on the inclusion corpus") {
  for (const auto& c : corpus()) {
    CAPTURE(c.label);
    const Inclusion inc(c.larger, c.smaller, c.state);
    const GnsSpace gns(c.larger, c.state);
    const ModularData md = tomita(gns);
    const BasicExtension ext = basic_extension(inc, gns, md);
    CHECK(jones_identity_residual(inc, gns, ext.projection) <= 1e-10);
    CHECK(ext.commutant_residual <= 1e-10);
    CHECK(ext.contains_larger <= 1e-10);
    CHECK(ext.algebra.dimension() == c.extension_dimension);
  }
}

TEST_CASE("index from the tracial state") {
  for (const auto& c : corpus()) {
    CAPTURE(c.label);
    const StateDensity tracial = StateDensity::tracial(c.larger.ambient_dimension());
    const Inclusion inc(c.larger, c.smaller, tracial);
    const GnsSpace gns(c.larger, tracial);
    const auto index = index_estimate(gns, jones_projection(inc, gns));
    REQUIRE(index.has_value());
    CHECK(std::abs(*index - c.index) <= 1e-10);
  }
}

TEST_CASE("no scalar index for a non-tracial state on C in M2") {
  const StateDensity rho = StateDensity::diagonal({0.7, 0.3});
  const Inclusion inc(MatrixAlgebra::full(2), MatrixAlgebra::scalars(2), rho);
  const GnsSpace gns(inc.larger(), rho);
  CHECK_FALSE(index_estimate(gns, jones_projection(inc, gns)).has_value());
}

TEST_CASE("Jones identity fails when the state does not leave N invariant") {
  Gen gen(43);
  const StateDensity generic(gen.density(3));
  const Inclusion inc(MatrixAlgebra::full(3), MatrixAlgebra::diagonal(3), generic);
  const GnsSpace gns(inc.larger(), generic);
  CHECK(jones_identity_residual(inc, gns, jones_projection(inc, gns)) > 1e-6);
}

TEST_CASE("relative commutants") {
  const MatrixAlgebra rc = relative_commutant(MatrixAlgebra::left_factor(2, 2), MatrixAlgebra::full(4));
  CHECK(span_equality_residual(rc.span(), MatrixAlgebra::right_factor(2, 2).span()) <= 1e-12);
  CHECK(relative_commutant(MatrixAlgebra::diagonal(3), MatrixAlgebra::full(3)).dimension() == 3);
  CHECK(relative_commutant(MatrixAlgebra::scalars(3), MatrixAlgebra::full(3)).dimension() == 9);
  CHECK(relative_commutant(MatrixAlgebra::full(3), MatrixAlgebra::full(3)).dimension() == 1);
}

TEST_CASE("extended conjugation reduces to J_M when N = M") {
  Gen gen(44);
  const StateDensity rho(gen.density(3));
  const GnsSpace gns(MatrixAlgebra::full(3), rho);
  const ModularData md = tomita(gns);
  const AntilinearOperator j = extended_conjugation(gns, MatrixAlgebra::full(3), md);
  CHECK((j.matrix() - md.conjugation.matrix()).norm() <= 1e-10);
}

TEST_CASE("canonical shift at N = M transports trivially") {
  Gen gen(45);
  for (int n = 2; n <= 3; ++n) {
    const StateDensity rho(gen.density(n));
    const Inclusion inc(MatrixAlgebra::full(n), MatrixAlgebra::full(n), rho);
    const GnsSpace gns(inc.larger(), rho);
    const ModularData md = tomita(gns);
    const BasicExtension ext = basic_extension(inc, gns, md);
    const CanonicalShift shift = canonical_shift(inc, gns, md, ext);
    CHECK(shift.unitarity_residual <= 1e-10);
    CHECK((shift.unitary - identity(n * n)).norm() <= 1e-10);
    CHECK(shift.max_transport() <= 1e-10);
  }
}

TEST_CASE("canonical shift is the identity whenever the state leaves N invariant") {
  // The restricted conjugation of [N Omega] coincides with J_M there, so the
  // product J_M J_N collapses to 1 and transport is the identity map.
  for (const auto& c : corpus()) {
    CAPTURE(c.label);
    const Inclusion inc(c.larger, c.smaller, c.state);
    const GnsSpace gns(c.larger, c.state);
    const ModularData md = tomita(gns);
    const BasicExtension ext = basic_extension(inc, gns, md);
    const CanonicalShift shift = canonical_shift(inc, gns, md, ext);
    CHECK(shift.unitarity_residual <= 1e-10);
    CHECK((shift.unitary - identity(gns.dimension())).norm() <= 1e-10);
  }
}
