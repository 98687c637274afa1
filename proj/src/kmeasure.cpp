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

#include "kalaik/kmeasure.hpp"

#include "kalaik/error.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <string>
#include <thread>

namespace kalaik {

namespace {

std::optional<SeparabilityCertificate> find_certificate(const DensityMatrix& rho, const std::vector<Bipartition>& cuts) {
  for (const auto& cut : cuts)
    if (auto c = product_certificate(rho, cut)) return c;
  for (int s = 0; s < rho.sites(); ++s)
    if (auto c = dephasing_separability_certificate(rho, s)) return c;
  for (const auto& cut : cuts)
    if (auto c = ppt_low_dim_certificate(rho, cut)) return c;
  return std::nullopt;
}

}  // namespace

DeltaResult delta_bounds(const DensityMatrix& rho_s, const SolverConfig& cfg, DeltaEffort effort) {
  if (rho_s.sites() < 2) throw ValidationError("delta_bounds: a subset needs at least two sites");
  cfg.validate();
  const std::vector<Bipartition> cuts = all_bipartitions(rho_s.sites());

  DeltaResult out;
  if (auto cert = find_certificate(rho_s, cuts)) {
    out.bounds = {0.0, 0.0, true, std::string(to_string(cert->kind)), std::string(to_string(cert->kind))};
    out.best_cut_mask = cert->cut.a_mask();
    out.certificate = std::move(cert);
    return out;
  }

  std::vector<PptDistanceResult> per_cut;
  per_cut.reserve(cuts.size());
  for (const auto& cut : cuts) per_cut.push_back(ppt_distance_screen(rho_s, cut, cfg));
  std::vector<bool> refined(cuts.size(), false);

  auto best_upper = [&] {
    std::size_t best = 0;
    for (std::size_t i = 1; i < cuts.size(); ++i)
      if (per_cut[i].bounds.upper < per_cut[best].bounds.upper) best = i;
    return best;
  };
  auto refine = [&](std::size_t i) {
    per_cut[i] = ppt_distance(rho_s, cuts[i], cfg);
    refined[i] = true;
  };

  if (effort == DeltaEffort::refine) {
    int budget = cfg.refine_cuts;
    // Screened uppers often tie; among near-ties start from the least entangled cut.
    std::size_t first = best_upper();
    const double tie = per_cut[first].bounds.upper + cfg.target_gap;
    for (std::size_t i = 0; i < cuts.size(); ++i)
      if (per_cut[i].bounds.upper <= tie && per_cut[i].negativity_lower < per_cut[first].negativity_lower) first = i;
    refine(first);
    --budget;
    for (;;) {
      const double upper = per_cut[best_upper()].bounds.upper;
      std::vector<std::size_t> weak;
      for (std::size_t i = 0; i < cuts.size(); ++i)
        if (!refined[i] && upper - per_cut[i].bounds.lower > cfg.target_gap) weak.push_back(i);
      if (weak.empty() || static_cast<int>(weak.size()) > budget) break;
      for (std::size_t i : weak) refine(i);
      budget -= static_cast<int>(weak.size());
    }
  }

  const std::size_t best = best_upper();
  std::size_t weakest = 0;
  for (std::size_t i = 1; i < cuts.size(); ++i)
    if (per_cut[i].bounds.lower < per_cut[weakest].bounds.lower) weakest = i;
  out.bounds.lower = per_cut[weakest].bounds.lower;
  out.bounds.lower_certificate = per_cut[weakest].bounds.lower_certificate;
  out.bounds.upper = per_cut[best].bounds.upper;
  out.bounds.upper_certificate = per_cut[best].bounds.upper_certificate;
  out.bounds.converged = out.bounds.upper - out.bounds.lower <= cfg.target_gap;
  out.best_cut_mask = cuts[best].a_mask();
  out.negativity_lower = per_cut.front().negativity_lower;
  for (const auto& r : per_cut) out.negativity_lower = std::min(out.negativity_lower, r.negativity_lower);
  return out;
}

KReport k_measure(const DensityMatrix& rho, const SolverConfig& cfg, const KMeasureOptions& opts) {
  cfg.validate();
  const int n = rho.sites();
  if (n > kMaxExhaustiveSites) {
    throw CapacityError("k_measure: " + std::to_string(n) + " sites exceeds the exhaustive limit of " +
                        std::to_string(kMaxExhaustiveSites) + "; use k_w_lower or k_grid_lower for structured states");
  }
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;
  std::vector<std::uint64_t> masks;
  for (std::uint64_t m = 1; m <= full; ++m) {
    if (std::popcount(m) < 2) continue;
    if (m == full && !opts.include_full_set) continue;
    masks.push_back(m);
  }

  std::vector<std::optional<DeltaResult>> results(masks.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < masks.size(); i = next++)
      results[i] = delta_bounds(partial_trace(rho, SubsetMask{masks[i]}.vertices()), cfg);
  };
  unsigned workers = opts.workers == 0 ? std::max(1u, std::thread::hardware_concurrency()) : opts.workers;
  workers = std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(masks.size(), 1)));
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }

  KReport report;
  report.n_sites = n;
  report.include_full_set = opts.include_full_set;
  for (std::size_t i = 0; i < masks.size(); ++i) {
    const DeltaResult& d = *results[i];
    if (d.certificate) {
      report.certified_zero.push_back({SubsetMask{masks[i]}, d.certificate->kind, d.certificate->cut.a_mask()});
      continue;
    }
    report.per_subset.push_back({SubsetMask{masks[i]}, d.bounds, d.negativity_lower, d.best_cut_mask});
    report.k_lower += d.bounds.lower;
    report.k_upper += d.bounds.upper;
    report.k_negativity_lower += d.negativity_lower;
    report.converged = report.converged && d.bounds.converged;
  }
  report.skipped_zero = report.certified_zero.size();
  return report;
}

WLowerReport k_w_lower(int n) {
  if (n < 2) throw ValidationError("k_w_lower: n must be >= 2");
  if (n > 1000) throw CapacityError("k_w_lower: n exceeds 1000");
  WLowerReport report;
  report.n = n;
  BigInt binom = n;  // C(n, 1)
  for (int k = 2; k <= n; ++k) {
    binom = binom * (n - k + 1) / k;
    WLowerTerm term;
    term.k = k;
    term.binomial = binom;
    term.delta_lower = INFINITY;
    for (int j = 1; j <= k / 2; ++j) {
      const double neg = w_negativity(n, k, j);
      // neg_distance_lb with min(2^j, 2^(k-j)) = 2^j, kept in floating point for large k
      const double lb = neg / std::ldexp(1.0, j);
      if (lb < term.delta_lower) {
        term.delta_lower = lb;
        term.argmin_j = j;
        term.negativity = neg;
      }
    }
    term.contribution = binom.convert_to<double>() * term.delta_lower;
    report.k_w_lower += term.contribution;
    report.terms.push_back(std::move(term));
  }
  return report;
}

ReferenceWFormula k_reference_w_formula(int n) {
  if (n < 2) throw ValidationError("k_reference_w_formula: n must be >= 2");
  if (n > 4096) throw CapacityError("k_reference_w_formula: n exceeds 4096");
  ReferenceWFormula out;
  BigInt binom = n;
  for (int k = 2; k <= n; ++k) {
    binom = binom * (n - k + 1) / k;
    out.lhs += BigRational(binom * k, BigInt(8) * n);
  }
  BigInt pow2 = 1;
  pow2 <<= static_cast<unsigned>(n);
  out.rhs = BigRational(pow2 - 2, BigInt(16));
  out.equal = out.lhs == out.rhs;
  return out;
}

GridKReport k_grid_lower(int rows, int cols, double p, const SolverConfig& cfg) {
  if (rows < 1 || cols < 1 || rows * cols < 2) throw ValidationError("k_grid_lower: grid needs at least two vertices");
  if (!(p >= 0.0 && p <= 1.0)) throw ValidationError("k_grid_lower: p must lie in [0, 1]");
  GridKReport out;
  out.rows = rows;
  out.cols = cols;
  out.p = p;
  const PptDistanceResult edge = ppt_distance(werner(p), Bipartition({0}, {1}), cfg);
  out.edge_distance = edge.bounds;
  out.delta = std::max(0.0, edge.bounds.lower);

  const int vertices = rows * cols;
  if (vertices <= kMaxCountVertices) {
    out.n_connected = count_connected_subsets(grid_graph(rows, cols), 2);
    out.count_method = "exact";
  } else if (rows == 1 || cols == 1) {
    out.n_connected = BigInt(vertices) * (vertices - 1) / 2;
    out.count_method = "chain-closed-form";
  } else {
    out.n_connected = cols >= 3 ? comb_lower_bound(rows, cols) : comb_lower_bound(cols, rows);
    out.count_method = "comb-lower-bound";
  }
  out.k_lower = out.n_connected.convert_to<double>() * out.delta;
  return out;
}

GridVerifyReport k_grid_verify_small(int rows, int cols, double p, const SolverConfig& cfg) {
  const DensityMatrix state = grid_pair_state(rows, cols, p);
  const Graph g = grid_graph(rows, cols);
  GridVerifyReport out;
  out.rows = rows;
  out.cols = cols;
  out.p = p;
  out.delta = std::max(0.0, ppt_distance(werner(p), Bipartition({0}, {1}), cfg).bounds.lower);
  out.all_passed = true;
  const std::uint64_t full = (std::uint64_t{1} << g.vertex_count()) - 1;
  for (std::uint64_t m = 1; m <= full; ++m) {
    if (std::popcount(m) < 2) continue;
    GridSubsetCheck check;
    check.mask = SubsetMask{m};
    check.connected = is_connected_subset(g, check.mask);
    check.delta = delta_bounds(partial_trace(state, check.mask.vertices()), cfg, DeltaEffort::screen);
    if (check.connected) {
      check.passed = check.delta.bounds.lower >= out.delta - kGridCheckSlack;
    } else {
      check.passed = check.delta.certificate.has_value() && check.delta.bounds.upper == 0.0;
    }
    out.all_passed = out.all_passed && check.passed;
    out.subsets.push_back(std::move(check));
  }
  return out;
}

}  // namespace kalaik
