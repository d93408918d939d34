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
 * File formats: matrices, algebras and inclusions as JSON, numeric series as
 * CSV. Every number is written in its shortest round-trip decimal form, so
 * files reload bit-exactly and identical runs produce identical bytes.
 *
 * Schemas (see docs/schemas.md):
 *   matrix     {"rows": n, "cols": m, "data": [[re, im], ...]}  row-major
 *   algebra    {"ambient_dim": n, "basis": [matrix, ...]}
 *   inclusion  {"larger": algebra, "smaller": algebra}
 *   state      a matrix file
 */

#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "modlab/algebra.hpp"
#include "modlab/linalg.hpp"

namespace modlab::io {

using Json = nlohmann::ordered_json;

/// Shortest decimal string that parses back to the same double.
std::string format_double(double x);

Json matrix_to_json(const Matrix& m);
/// Throws ConfigError on schema violations.
Matrix matrix_from_json(const Json& j);

Json algebra_to_json(const MatrixAlgebra& a);
/// Re-orthonormalizes the basis and re-validates closure (StructureError).
MatrixAlgebra algebra_from_json(const Json& j);

struct InclusionSpec {
  MatrixAlgebra larger;
  MatrixAlgebra smaller;
};
Json inclusion_to_json(const MatrixAlgebra& larger, const MatrixAlgebra& smaller);
InclusionSpec inclusion_from_json(const Json& j);

/// Parses a JSON file; missing or unparsable files raise ConfigError.
Json read_json_file(const std::filesystem::path& path);

/// Writes to a sibling temporary file and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

/// Two-space indented JSON with a trailing newline.
std::string dump(const Json& j);

/// Numeric table with a fixed header, rendered as CSV.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> columns);

  const std::vector<std::string>& columns() const { return columns_; }
  std::size_t size() const { return rows_.size(); }
  /// Throws DimensionError if the row length differs from the header.
  void add_row(std::vector<double> row);
  const std::vector<std::vector<double>>& rows() const { return rows_; }
  std::string header_line() const;
  std::string to_string() const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<double>> rows_;
};

}  // namespace modlab::io
