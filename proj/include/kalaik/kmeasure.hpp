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

#include "kalaik/entanglement.hpp"
#include "kalaik/gridcount.hpp"
#include "kalaik/sepdist.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>
#include <vector>

namespace kalaik {

using BigRational = boost::multiprecision::cpp_rational;

/// Bounds on Delta(rho_S): the minimum over all cuts of S of the distance to
/// the separable states across that cut.
struct DeltaResult {
  BoundInterval bounds;
  /// Minimum over cuts of negativity / min(d_A, d_B).
  double negativity_lower = 0.0;
  /// Present when some cut was proven separable; bounds are then (0, 0).
  std::optional<SeparabilityCertificate> certificate;
  /// A-side mask (local site indices) of the cut giving the upper bound.
  std::uint64_t best_cut_mask = 0;
};

enum class DeltaEffort { screen, refine };

/// Short-circuits to (0, 0) when any cut has a product, block-diagonal or
/// low-dimensional PPT certificate. Otherwise every cut is screened from its
/// starting points. With DeltaEffort::refine the cut with the smallest upper
/// bound is then refined by the full solver, followed by the cuts holding
/// the weakest lower bounds, up to cfg.refine_cuts in total and only while
/// the remaining budget can still close the gap.
/// lower = min over cuts of the per-cut lower bounds. upper = min over cuts
/// of the per-cut upper bounds, which bounds the PPT-relaxed Delta; it bounds
/// Delta itself when that cut is 2x2 or 2x3.
DeltaResult delta_bounds(const DensityMatrix& rho_s, const SolverConfig& cfg = {},
                         DeltaEffort effort = DeltaEffort::refine);

struct SubsetDelta {
  SubsetMask mask;
  BoundInterval delta;
  double negativity_lower = 0.0;
  std::uint64_t best_cut_mask = 0;
};

struct CertifiedZero {
  SubsetMask mask;
  CertificateKind kind;
  /// A side of the certified cut, as a mask over the subset's local sites.
  std::uint64_t cut_mask = 0;
};

/// K(rho) summed over every site subset of size >= 2.
struct KReport {
  int n_sites = 0;
  bool include_full_set = true;
  /// Subsets that needed the solver, ascending mask order.
  std::vector<SubsetDelta> per_subset;
  /// Subsets proven to have Delta = 0, ascending mask order.
  std::vector<CertifiedZero> certified_zero;
  std::size_t skipped_zero = 0;
  double k_lower = 0.0;
  double k_upper = 0.0;
  /// Sum of the per-subset negativity lower bounds.
  double k_negativity_lower = 0.0;
  bool converged = true;
};

inline constexpr int kMaxExhaustiveSites = 8;

struct KMeasureOptions {
  /// Include S = all sites in the sum.
  bool include_full_set = true;
  /// Worker threads for subset evaluation; 0 picks the hardware count.
  unsigned workers = 1;
};

/// Exhaustive K over all 2^n - n - 1 subsets (n <= 8). Totals are summed in
/// ascending mask order whatever the worker count.
KReport k_measure(const DensityMatrix& rho, const SolverConfig& cfg = {}, const KMeasureOptions& opts = {});

struct WLowerTerm {
  int k = 0;
  BigInt binomial;
  int argmin_j = 1;
  double negativity = 0.0;
  /// min over j of w_negativity(n,k,j) / 2^j.
  double delta_lower = 0.0;
  double contribution = 0.0;
};

struct WLowerReport {
  int n = 0;
  double k_w_lower = 0.0;
  std::vector<WLowerTerm> terms;
};

/// Certified lower bound on K(|W_n><W_n|) using permutation symmetry:
/// sum_{k=2}^{n} C(n,k) * min_j neg_distance_lb(w_negativity(n,k,j), 2^j, 2^(k-j)).
WLowerReport k_w_lower(int n);

struct ReferenceWFormula {
  BigRational lhs;  ///< sum_{k=2}^{n} C(n,k) k / (8n)
  BigRational rhs;  ///< (2^n - 2) / 16
  bool equal = false;
};

ReferenceWFormula k_reference_w_formula(int n);

struct GridKReport {
  int rows = 0;
  int cols = 0;
  double p = 0.0;
  /// Connected vertex subsets of size >= 2 (or a lower bound on that count).
  BigInt n_connected;
  /// "exact", "chain-closed-form" or "comb-lower-bound".
  std::string count_method;
  BoundInterval edge_distance;
  double delta = 0.0;
  double k_lower = 0.0;
};

/// K >= N * delta, with delta the certified lower bound on the separable
/// distance of one werner(p) edge pair.
GridKReport k_grid_lower(int rows, int cols, double p, const SolverConfig& cfg = {});

struct GridSubsetCheck {
  SubsetMask mask;
  bool connected = false;
  DeltaResult delta;
  bool passed = false;
};

struct GridVerifyReport {
  int rows = 0;
  int cols = 0;
  double p = 0.0;
  double delta = 0.0;
  std::vector<GridSubsetCheck> subsets;
  bool all_passed = false;
};

/// Slack allowed below delta for connected subsets.
inline constexpr double kGridCheckSlack = 1e-3;

/// Materializes grid_pair_state and checks every vertex subset of size >= 2
/// using screened (unrefined) Delta bounds:
/// connected ones must have Delta lower bound >= delta - 1e-3, disconnected
/// ones must be certified (0, 0).
GridVerifyReport k_grid_verify_small(int rows, int cols, double p, const SolverConfig& cfg = {});

}  // namespace kalaik
