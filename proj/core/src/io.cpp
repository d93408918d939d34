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

#include "modlab/io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

#include "modlab/errors.hpp"

namespace modlab::io {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) x = 0.0;  // drop the sign of negative zero
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  if (ec != std::errc()) throw Error("format_double: conversion failed");
  return std::string(buf.data(), end);
}

Json matrix_to_json(const Matrix& m) {
  Json data = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) data.push_back(Json::array({m(i, j).real(), m(i, j).imag()}));
  return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

Matrix matrix_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("data"))
    throw ConfigError("matrix: expected an object with rows, cols and data");
  if (!j["rows"].is_number_integer() || !j["cols"].is_number_integer())
    throw ConfigError("matrix: rows and cols must be non-negative integers");
  const auto rows = j["rows"].get<Eigen::Index>();
  const auto cols = j["cols"].get<Eigen::Index>();
  const auto& data = j["data"];
  if (rows <= 0 || cols <= 0) throw ConfigError("matrix: rows and cols must be positive");
  if (!data.is_array() || static_cast<Eigen::Index>(data.size()) != rows * cols)
    throw ConfigError("matrix: data must hold rows*cols entries");
  Matrix m(rows, cols);
  for (Eigen::Index k = 0; k < rows * cols; ++k) {
    const auto& entry = data[static_cast<std::size_t>(k)];
    if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() || !entry[1].is_number())
      throw ConfigError("matrix: each entry must be [re, im]");
    const double re = entry[0].get<double>();
    const double im = entry[1].get<double>();
    if (!std::isfinite(re) || !std::isfinite(im)) throw ConfigError("matrix: non-finite entry");
    m(k / cols, k % cols) = Complex(re, im);
  }
  return m;
}

Json algebra_to_json(const MatrixAlgebra& a) {
  Json basis = Json::array();
  for (const auto& b : a.basis()) basis.push_back(matrix_to_json(b));
  return Json{{"ambient_dim", a.ambient_dimension()}, {"basis", std::move(basis)}};
}

MatrixAlgebra algebra_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("ambient_dim") || !j.contains("basis") || !j["basis"].is_array())
    throw ConfigError("algebra: expected an object with ambient_dim and basis");
  if (!j["ambient_dim"].is_number_integer()) throw ConfigError("algebra: ambient_dim must be a positive integer");
  const auto n = j["ambient_dim"].get<Eigen::Index>();
  if (n <= 0) throw ConfigError("algebra: ambient_dim must be a positive integer");
  std::vector<Matrix> elements;
  for (const auto& e : j["basis"]) {
    Matrix m = matrix_from_json(e);
    if (m.rows() != n || m.cols() != n) throw ConfigError("algebra: basis element does not match ambient_dim");
    elements.push_back(std::move(m));
  }
  if (elements.empty()) throw ConfigError("algebra: empty basis");
  return MatrixAlgebra::from_spanning_set(n, elements);
}

Json inclusion_to_json(const MatrixAlgebra& larger, const MatrixAlgebra& smaller) {
  return Json{{"larger", algebra_to_json(larger)}, {"smaller", algebra_to_json(smaller)}};
}

InclusionSpec inclusion_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("larger") || !j.contains("smaller"))
    throw ConfigError("inclusion: expected an object with larger and smaller");
  return InclusionSpec{algebra_from_json(j["larger"]), algebra_from_json(j["smaller"])};
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("invalid JSON in " + path.string() + ": " + e.what());
  }
}

void write_file_atomic(const std::filesystem::path& path, std::string_view contents) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot write " + tmp.string());
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw ConfigError("write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw ConfigError("cannot rename into " + path.string());
  }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

CsvTable::CsvTable(std::vector<std::string> columns) : columns_(std::move(columns)) {}

void CsvTable::add_row(std::vector<double> row) {
  if (row.size() != columns_.size()) throw DimensionError("CsvTable: row length does not match header");
  rows_.push_back(std::move(row));
}

std::string CsvTable::header_line() const {
  std::string line;
  for (std::size_t k = 0; k < columns_.size(); ++k) {
    if (k) line += ',';
    line += columns_[k];
  }
  return line;
}

std::string CsvTable::to_string() const {
  std::string out = header_line() + "\n";
  for (const auto& row : rows_) {
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (k) out += ',';
      out += format_double(row[k]);
    }
    out += '\n';
  }
  return out;
}

}  // namespace modlab::io
