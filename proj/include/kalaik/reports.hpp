// Copyright 2026 The kalaik Authors
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

// JSON report records shared by the C API and the command-line tool. Every
// real is rounded to 12 significant digits before it is stored.

#include "kalaik/kmeasure.hpp"

#include <json.hpp>

#include <optional>
#include <span>
#include <string>

namespace kalaik {

using Json = nlohmann::json;

double round_sig(double value, int digits = 12);

void to_json(Json& j, const BoundInterval& b);
void from_json(const Json& j, BoundInterval& b);
void to_json(Json& j, const SubsetDelta& s);
void from_json(const Json& j, SubsetDelta& s);
void to_json(Json& j, const CertifiedZero& c);
void from_json(const Json& j, CertifiedZero& c);
void to_json(Json& j, const KReport& r);
void from_json(const Json& j, KReport& r);
void to_json(Json& j, const WLowerTerm& t);
void from_json(const Json& j, WLowerTerm& t);
void to_json(Json& j, const WLowerReport& r);
void from_json(const Json& j, WLowerReport& r);
void to_json(Json& j, const GridKReport& r);
void from_json(const Json& j, GridKReport& r);

CertificateKind certificate_kind_from_string(const std::string& s);

namespace reports {

/// Rows of (n, k, j, negativity, ...). Unset k or j means every valid value.
Json wneg(int n, std::optional<int> k, std::optional<int> j);

/// k_w_lower next to the reference sum (2^n - 2)/16.
Json wk(int n);

Json kmeasure(const DensityMatrix& rho, const std::string& state, const Json& params, const SolverConfig& cfg,
              const KMeasureOptions& opts);

/// With `verify`, also runs k_grid_verify_small on the materialized state.
Json gridk(int rows, int cols, double p, bool verify, const SolverConfig& cfg);

Json count(int rows, int cols);

Json sepdist(const DensityMatrix& rho, const Bipartition& cut, const std::string& state, const Json& params,
             const SolverConfig& cfg);

/// For each phi: the largest trace distance between any (n-1)-site marginal
/// of phase_cat(n, phi) and of phase_cat(n, 0), and the full-state distance.
Json catphase(int n, std::span<const double> phis);

/// Flattens the report's table (its "rows", or a single row of scalars).
std::string to_csv(const Json& report);

/// False only when the report carries "converged": false.
bool converged(const Json& report);

}  // namespace reports
}  // namespace kalaik
