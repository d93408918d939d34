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

/**
 * @file
 * Verification suites: named collections of numerical checks, each a
 * measured value compared with a threshold. The `verify` subcommand and the
 * acceptance runner both execute these.
 */

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "modlab/io.hpp"

namespace modlab {

enum class Bound {
  at_most,   ///< passes when value <= threshold
  at_least,  ///< passes when value >= threshold
  report     ///< diagnostic only; always passes
};

struct Check {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  Bound bound = Bound::at_most;
  bool passed() const;
};

struct SuiteResult {
  std::string name;
  std::vector<Check> checks;
  bool passed() const;
  const Check* find(const std::string& check) const;
  void add(std::string check, double value, double threshold, Bound bound = Bound::at_most);
};

struct VerifyOptions {
  std::vector<int> dims{2, 3, 4};
  std::uint64_t seed = 1;
};

struct RunReport {
  std::string version;
  VerifyOptions options;
  std::vector<SuiteResult> suites;
  std::optional<double> wall_clock_seconds;

  bool passed() const;
  const SuiteResult* find(const std::string& suite) const;
  io::Json to_json() const;
};

/// Suite names in their canonical order; "all" selects every one.
const std::vector<std::string>& suite_names();

/// Throws ConfigError for an unknown suite name.
SuiteResult run_suite(const std::string& name, const VerifyOptions& options);

/// Runs the named suites ("all" expands) in canonical order, without timing.
RunReport run_verification(const std::vector<std::string>& suites, const VerifyOptions& options);

}  // namespace modlab
