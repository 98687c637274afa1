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

#include <doctest.h>

#include "kalaik/error.hpp"
#include "kalaik/gridcount.hpp"
#include "kalaik/sepdist.hpp"

#include <cmath>
#include <random>

using namespace kalaik;

namespace {

const Bipartition kCut({0}, {1});

ComplexMatrix bell_projector() { return bell_pair().matrix(); }

void check_feasible(const PptDistanceResult& r, const DensityMatrix& rho, const Bipartition& cut) {
  const ComplexMatrix& s = r.feasible_state;
  CHECK(min_eigenvalue(s) >= -1e-9);
  CHECK(min_eigenvalue(partial_transpose(s, rho.layout(), cut.b())) >= -1e-9);
  CHECK(std::abs(s.trace().real() - 1.0) < 1e-9);
  CHECK(std::abs(trace_norm(rho.matrix() - s) - r.bounds.upper) < 1e-9);
  CHECK(r.bounds.lower <= r.bounds.upper + 1e-12);
}

}  // namespace

TEST_CASE("config validation") {
  SolverConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.target_gap = 0.0;
  CHECK_THROWS_AS(cfg.validate(), ValidationError);
  cfg = {};
  cfg.dykstra_rounds = 0;
  CHECK_THROWS_AS(cfg.validate(), ValidationError);
}

TEST_CASE("product state is at distance zero") {
  ComplexMatrix m = ComplexMatrix::Zero(4, 4);
  m(0, 0) = m(0, 1) = m(1, 0) = m(1, 1) = 0.5;  // |0>|+>
  const DensityMatrix rho(m, SystemLayout::qubits(2));
  const PptDistanceResult r = ppt_distance(rho, kCut);
  CHECK(r.bounds.lower == doctest::Approx(0.0).epsilon(1e-6));
  CHECK(r.bounds.upper <= 1e-6);
  CHECK(r.bounds.converged);
}

TEST_CASE("Bell state distance is one half") {
  const PptDistanceResult r = ppt_distance(bell_pair(), kCut);
  CHECK(r.bounds.lower >= 0.499);
  CHECK(r.bounds.upper <= 0.501);
  CHECK(r.bounds.lower_certificate == "witness");
  CHECK(r.bounds.converged);
  check_feasible(r, bell_pair(), kCut);
}

TEST_CASE("Werner family follows (3p - 1)/4") {
  CHECK(ppt_distance(werner(1.0 / 3), kCut).bounds.upper <= 1e-3);
  for (double p : {0.2, 0.5, 0.75, 0.9}) {
    const PptDistanceResult r = ppt_distance(werner(p), kCut);
    const double expect = std::max(0.0, (3 * p - 1) / 4);
    CAPTURE(p);
    CHECK(r.bounds.lower <= expect + 1e-9);
    CHECK(r.bounds.upper >= expect - 1e-9);
    CHECK(r.bounds.upper - r.bounds.lower <= 1e-3);
    check_feasible(r, werner(p), kCut);
  }
}

TEST_CASE("W marginal is bracketed") {
  const DensityMatrix rho = w_reduced(3, 2);
  const PptDistanceResult r = ppt_distance(rho, kCut);
  CHECK(r.bounds.lower >= (std::sqrt(5.0) - 1.0) / 12 - 1e-12);
  CHECK(r.bounds.converged);
  check_feasible(r, rho, kCut);
}

TEST_CASE("bounds hold on random two-qubit states") {
  std::mt19937_64 rng(21);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 8; ++trial) {
    ComplexMatrix a(4, 4);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) a(i, j) = Complex(g(rng), g(rng));
    ComplexMatrix m = a * a.adjoint();
    m /= m.trace().real();
    const DensityMatrix rho(m, SystemLayout::qubits(2));
    const PptDistanceResult r = ppt_distance(rho, kCut);
    check_feasible(r, rho, kCut);
    CHECK(r.bounds.lower >= r.negativity_lower - 1e-12);
  }
}

TEST_CASE("dual bound on a larger cut") {
  // Two Bell pairs across a 4x4 cut: distance to PPT is 3/4.
  const DensityMatrix rho = regroup(bell_pairs(2), {{0, 2}, {1, 3}});
  const PptDistanceResult r = ppt_distance(rho, Bipartition({0}, {1}));
  check_feasible(r, rho, Bipartition({0}, {1}));
  CHECK(r.bounds.upper >= 0.75 - 1e-9);
  CHECK(r.bounds.lower <= 0.75 + 1e-9);
  CHECK(r.bounds.lower > 0.5);
}

TEST_CASE("screen skips descent") {
  const PptDistanceResult r = ppt_distance_screen(w_reduced(4, 2), kCut);
  CHECK(r.iterations == 0);
  CHECK(r.bounds.lower <= r.bounds.upper);
}

TEST_CASE("capacity guard") {
  CHECK_THROWS_AS(ppt_distance(maximally_mixed(SystemLayout({16, 32})), Bipartition({0}, {1})), CapacityError);
}

TEST_CASE("separable overlap") {
  const SystemLayout two = SystemLayout::qubits(2);
  CHECK(separable_overlap_max(ComplexMatrix::Identity(4, 4), two, kCut) == doctest::Approx(1.0));
  CHECK(std::abs(separable_overlap_max(bell_projector(), two, kCut) - 0.5) < 1e-9);
  ComplexMatrix p01 = ComplexMatrix::Zero(4, 4);
  p01(1, 1) = 1.0;
  CHECK(separable_overlap_max(p01, two, kCut) == doctest::Approx(1.0));
  CHECK_THROWS_AS(separable_overlap_max(ComplexMatrix::Identity(8, 8), SystemLayout({2, 4}), kCut),
                  UnsupportedError);
  CHECK_THROWS_AS(separable_overlap_max(2.0 * ComplexMatrix::Identity(4, 4), two, kCut), ValidationError);
  CHECK(separable_overlap_bound(bell_projector(), two, kCut) >= 0.5);
  CHECK(separable_overlap_bound(bell_projector(), two, kCut) <= 0.5 + 1e-12);
}

TEST_CASE("witness bound for the Bell projector") {
  const double w = witness_lower_bound(bell_pair(), bell_projector(), kCut);
  CHECK(w <= 0.5);
  CHECK(w >= 0.5 - 1e-12);
}
