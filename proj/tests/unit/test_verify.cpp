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
#include "modlab/verify.hpp"

using namespace modlab;

TEST_CASE("suite registry") {
  const auto& names = suite_names();
  const std::vector<std::string> expected{"linalg",    "algebra",    "golden-values", "tomita",     "jones",
                                          "patha",     "tomiyama",   "kprime",     "generator",  "cocycle",
                                          "filtration", "correlator", "stability",  "seed"};
  CHECK(names == expected);
  CHECK_THROWS_AS(run_suite("nope", VerifyOptions{}), ConfigError);
  CHECK_THROWS_AS(run_verification({"linalg", "nope"}, VerifyOptions{}), ConfigError);
}

TEST_CASE("checks honour their bound") {
  CHECK(Check{"a", 1e-12, 1e-10, Bound::at_most}.passed());
  CHECK_FALSE(Check{"a", 1e-8, 1e-10, Bound::at_most}.passed());
  CHECK(Check{"b", 0.5, 1e-2, Bound::at_least}.passed());
  CHECK_FALSE(Check{"b", 1e-3, 1e-2, Bound::at_least}.passed());
  CHECK(Check{"c", 1e9, 0.0, Bound::report}.passed());
  // NaN never passes an asserted bound.
  CHECK_FALSE(Check{"d", std::nan(""), 1.0, Bound::at_most}.passed());
}

TEST_CASE("report layout and determinism") {
  VerifyOptions options;
  options.dims = {2, 3};
  const RunReport first = run_verification({"linalg", "golden-values"}, options);
  const RunReport second = run_verification({"linalg", "golden-values"}, options);
  CHECK(first.passed());
  const io::Json j = first.to_json();
  CHECK(j["tool"] == "modlab");
  CHECK(j["config"]["seed"] == 1);
  CHECK(j["suites"].size() == 2);
  CHECK(j["suites"][0]["name"] == "linalg");
  CHECK(j.contains("passed"));
  CHECK_FALSE(j.contains("wall_clock_seconds"));
  CHECK(io::dump(j) == io::dump(second.to_json()));
  // Each check name appears once per suite.
  for (const auto& suite : first.suites)
    for (const auto& c : suite.checks) {
      int count = 0;
      for (const auto& other : suite.checks) count += other.name == c.name;
      CHECK(count == 1);
    }
}

TEST_CASE("'all' expands to every suite in order") {
  VerifyOptions options;
  options.dims = {2};
  const RunReport report = run_verification({"all"}, options);
  REQUIRE(report.suites.size() == suite_names().size());
  for (std::size_t k = 0; k < report.suites.size(); ++k) CHECK(report.suites[k].name == suite_names()[k]);
  CHECK(report.passed());
}
