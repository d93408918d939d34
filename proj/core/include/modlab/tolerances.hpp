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

// Numerical thresholds shared across modules. Values are absolute unless the
// name says otherwise.

namespace modlab::tol {

/// Hermiticity acceptance and spectral reconstruction, relative to max(1, ||H||_F).
inline constexpr double hermitian = 1e-12;
/// Smallest eigenvalue a faithful density (or a log / negative-power argument) may have.
inline constexpr double eigenvalue_floor = 1e-12;
/// Unit trace of a density matrix.
inline constexpr double trace = 1e-12;
/// Span membership, Gram and closure residuals for algebras with ambient dim <= 32.
inline constexpr double span = 1e-10;
/// Relative drop threshold when orthonormalizing a spanning set.
inline constexpr double rank = 1e-8;
/// Generic structural residual (modular identities, Jones relations, Choi PSD).
inline constexpr double structural = 1e-10;
/// Central finite-difference step used for path derivatives.
inline constexpr double fd_step = 1e-4;
/// Agreement required between finite-difference and closed-form derivatives.
inline constexpr double fd_agreement = 1e-6;
/// Diagnostics that are expected to fail must fail by at least this much.
inline constexpr double failure_witness = 1e-6;

}  // namespace modlab::tol
