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
 * The modlab command line, callable in-process for tests.
 *
 * Exit status: 0 success, 1 an asserted check failed, 2 configuration error,
 * 3 numerical singularity. Failures print one JSON object on the error stream,
 * e.g. {"error":"config","message":"..."}.
 */

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace modlab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitAssertion = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitSingularity = 3;

/// Frozen CSV headers.
inline constexpr const char* kPathaColumns = "s,defect,choi_min_eig,ks_min_residual";
inline constexpr const char* kPathbColumns = "s,kprime_vs_negP,g_vs_2p,kind_distance,cocycle_residual";
inline constexpr const char* kCorrelatorColumns = "s,re_F,im_F";
inline constexpr const char* kFidelityColumns = "s,fidelity";
inline constexpr const char* kStabilityColumns = "s,lhs,kato_rhs,proj_dist,fit_Cz";

/// Evenly spaced grid from "a:b:step"; the end point is always included.
std::vector<double> parse_grid(const std::string& spec);

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace modlab::cli
