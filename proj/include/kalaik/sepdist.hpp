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

#include "kalaik/qsys.hpp"

#include <cstdint>
#include <string>

namespace kalaik {

struct SolverConfig {
  int max_iterations = 5000;
  /// Stop once upper - lower <= target_gap.
  double target_gap = 1e-3;
  /// Initial eigenvalue soft-threshold of the trace-norm step, in units of
  /// 1/D for a D-dimensional state. Sets the starting ADMM penalty.
  double step_size = 0.5;
  /// Cap on Dykstra rounds when an iterate is pushed back to feasibility.
  int dykstra_rounds = 50;
  /// Drives the random starts of separable_overlap_max.
  std::uint64_t seed = 7;
  /// Give up after this many iterations without improving the upper bound
  /// by at least 1e-3 * target_gap.
  int stall_iterations = 100;
  /// Most cuts per subset that delta_bounds refines with the full solver.
  int refine_cuts = 3;

  void validate() const;
};

/// Certified interval for a trace-norm distance.
struct BoundInterval {
  double lower = 0.0;
  double upper = 0.0;
  bool converged = false;
  std::string lower_certificate;
  std::string upper_certificate;
};

struct PptDistanceResult {
  BoundInterval bounds;
  /// PSD, PPT and unit-trace; bounds.upper = ||rho - feasible_state||_tr.
  ComplexMatrix feasible_state;
  /// negativity / min(d_A, d_B) for the same cut.
  double negativity_lower = 0.0;
  int iterations = 0;
};

/// Largest total dimension accepted by ppt_distance.
inline constexpr std::size_t kMaxSolverDim = 256;

/// Trace-norm distance from rho to the PPT states across `cut`.
///
/// The upper bound comes from an explicit feasible state: the better of two
/// mixtures of rho with a PPT reference state (rho_A (x) rho_B and I/D),
/// improved by projected subgradient descent with Dykstra projections onto
/// the PSD cone, the PPT cone and the trace-one plane. Every iterate is
/// pushed strictly inside both cones by mixing with I/D.
///
/// The lower bound is the largest of
///  - negativity / min(d_A, d_B);
///  - on 2x2 cuts, tr(P rho) - max_product <ab|P|ab> for P the positive
///    spectral projector of rho - sigma*;
///  - for larger cuts over qubit-factorizable sites, the 2x2 bound of any
///    two-qubit marginal taking one qubit from each side (partial trace on
///    each side is local, so it maps separable states to separable states
///    and cannot increase the distance).
/// Each of these also bounds the distance to the separable states, which on
/// 2x2 and 2x3 cuts coincides with the PPT distance.
PptDistanceResult ppt_distance(const DensityMatrix& rho, const Bipartition& cut, const SolverConfig& cfg = {});

/// Bounds from the starting points alone, with no descent iterations. The
/// two-qubit marginals behind the local-reduction bound are still solved in
/// full.
PptDistanceResult ppt_distance_screen(const DensityMatrix& rho, const Bipartition& cut, const SolverConfig& cfg = {});

/// Max over product states |a>|b> of <ab|P|ab> on a two-qubit layout, by
/// alternating top-eigenvector updates from a 8x8 Bloch-sphere grid plus 16
/// seeded random starts. Requires 0 <= P <= I.
double separable_overlap_max(const ComplexMatrix& p, const SystemLayout& layout, const Bipartition& cut,
                             const SolverConfig& cfg = {});

/// Added to separable_overlap_max before it enters a lower bound.
inline constexpr double kOverlapSafetyMargin = 1e-6;
/// Rounding allowance on the spectral bound below.
inline constexpr double kSpectralOverlapMargin = 1e-13;

/// Upper bound on the separable overlap of P: the smaller of
/// separable_overlap_max + kOverlapSafetyMargin and the spectral bound
/// l1 * s1^2 + l2 + l3 + l4 (+ kSpectralOverlapMargin), where l1 is the top
/// eigenvalue of P and s1 the top Schmidt coefficient of its eigenvector.
double separable_overlap_bound(const ComplexMatrix& p, const SystemLayout& layout, const Bipartition& cut,
                               const SolverConfig& cfg = {});

/// tr(P rho) - separable_overlap_bound(P), a lower bound on the distance
/// from rho to the separable states for any 0 <= P <= I.
double witness_lower_bound(const DensityMatrix& rho, const ComplexMatrix& p, const Bipartition& cut,
                           const SolverConfig& cfg = {});

}  // namespace kalaik
