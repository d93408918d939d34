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

#pragma once

#include <stdexcept>
#include <string>

namespace modlab {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shapes or tensor factorizations that do not match.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Input expected to be Hermitian is not, beyond tolerance.
class NonHermitianError : public Error {
 public:
  NonHermitianError(const std::string& what, double max_asymmetry)
      : Error(what), max_asymmetry_(max_asymmetry) {}
  double max_asymmetry() const noexcept { return max_asymmetry_; }

 private:
  double max_asymmetry_;
};

/// An eigenvalue fell below the faithfulness floor, or an operator that must
/// be inverted is singular.
class SingularityError : public Error {
 public:
  SingularityError(const std::string& what, double eigenvalue)
      : Error(what), eigenvalue_(eigenvalue) {}
  double eigenvalue() const noexcept { return eigenvalue_; }

 private:
  double eigenvalue_;
};

/// A parameter outside its admissible range (s outside [0,1], Im z = 0, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// An algebra or state violated a structural invariant.
class StructureError : public Error {
 public:
  using Error::Error;
};

/// Malformed or missing input: files, JSON schemas, command-line values.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace modlab
