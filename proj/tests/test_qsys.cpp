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
#include "kalaik/qsys.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

using namespace kalaik;

namespace {

DensityMatrix random_state(const SystemLayout& layout, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  const auto d = static_cast<Eigen::Index>(layout.total_dim());
  ComplexMatrix a(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) a(i, j) = Complex(g(rng), g(rng));
  ComplexMatrix rho = a * a.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix(rho, layout);
}

DensityMatrix psi_plus_mix(double w00) {
  ComplexMatrix m = ComplexMatrix::Zero(4, 4);
  m(0, 0) = w00;
  m(1, 1) = m(2, 2) = m(1, 2) = m(2, 1) = (1.0 - w00) / 2.0;
  return DensityMatrix(m, SystemLayout::qubits(2));
}

}  // namespace

TEST_CASE("layout bookkeeping") {
  const SystemLayout l({2, 3, 4});
  CHECK(l.total_dim() == 24);
  CHECK(l.stride(0) == 12);
  CHECK(l.stride(1) == 4);
  CHECK(l.stride(2) == 1);
  CHECK(l.dim_of({0, 2}) == 8);
  CHECK(l.restricted_to({1, 2}).dims() == std::vector<int>{3, 4});
  CHECK_THROWS_AS(SystemLayout({2, 1}), ValidationError);
  CHECK_THROWS_AS(SystemLayout({}), ValidationError);
}

TEST_CASE("density matrix validation") {
  ComplexMatrix m = ComplexMatrix::Identity(2, 2);
  CHECK_THROWS_AS(DensityMatrix(m, SystemLayout::qubits(1)), ValidationError);
  m /= 2.0;
  CHECK_NOTHROW(DensityMatrix(m, SystemLayout::qubits(1)));
  ComplexMatrix neg(2, 2);
  neg << 1.5, 0, 0, -0.5;
  CHECK_THROWS_AS(DensityMatrix(neg, SystemLayout::qubits(1)), ValidationError);
  CHECK_THROWS_AS(DensityMatrix(m, SystemLayout::qubits(2)), ValidationError);
}

TEST_CASE("bipartitions") {
  const Bipartition cut = Bipartition::from_mask(0b0101, 4);
  CHECK(cut.a() == SiteSet{0, 2});
  CHECK(cut.b() == SiteSet{1, 3});
  CHECK(cut.a_mask() == 0b0101);
  CHECK_THROWS_AS(Bipartition({0, 1}, {1, 2}), ValidationError);
  CHECK_THROWS_AS(Bipartition({}, {1}), ValidationError);
  const auto cuts = all_bipartitions(4);
  CHECK(cuts.size() == 7);
  for (const auto& c : cuts) CHECK(c.a().front() == 0);
}

TEST_CASE("partial trace") {
  std::mt19937_64 rng(5);
  const DensityMatrix a = random_state(SystemLayout({2}), rng);
  const DensityMatrix b = random_state(SystemLayout({3}), rng);
  const DensityMatrix ab = tensor_product(a, b);
  CHECK(max_abs_diff(partial_trace(ab, {0}).matrix(), a.matrix()) < 1e-14);
  CHECK(max_abs_diff(partial_trace(ab, {1}).matrix(), b.matrix()) < 1e-14);
  CHECK_THROWS_AS(partial_trace(ab, {}), ValidationError);

  CHECK(max_abs_diff(partial_trace(bell_pair(), {1}).matrix(), ComplexMatrix::Identity(2, 2) / 2.0) < 1e-15);
  CHECK(max_abs_diff(partial_trace(w_state(3), {1, 2}).matrix(), psi_plus_mix(1.0 / 3).matrix()) < 1e-14);

  // Tracing in two steps equals tracing at once.
  const DensityMatrix r = random_state(SystemLayout({2, 2, 3}), rng);
  const DensityMatrix step = partial_trace(partial_trace(r, {0, 2}), {1});
  CHECK(max_abs_diff(step.matrix(), partial_trace(r, {2}).matrix()) < 1e-14);
}

TEST_CASE("partial transpose") {
  std::mt19937_64 rng(9);
  const DensityMatrix a = random_state(SystemLayout({2}), rng);
  const DensityMatrix b = random_state(SystemLayout({2}), rng);
  const DensityMatrix ab = tensor_product(a, b);
  const ComplexMatrix gamma = partial_transpose(ab, Bipartition({0}, {1}));
  CHECK(max_abs_diff(gamma, tensor_product(a.matrix(), ComplexMatrix(b.matrix().transpose()))) < 1e-15);
  CHECK(min_eigenvalue(gamma) > -1e-14);

  const DensityMatrix r = random_state(SystemLayout({2, 3, 2}), rng);
  const ComplexMatrix twice = partial_transpose(partial_transpose(r.matrix(), r.layout(), {1}), r.layout(), {1});
  CHECK(max_abs_diff(twice, r.matrix()) < 1e-15);
  // Transposing both sides of a cut is the full transpose.
  const ComplexMatrix both =
      partial_transpose(partial_transpose(r.matrix(), r.layout(), {0, 2}), r.layout(), {1});
  CHECK(max_abs_diff(both, r.matrix().transpose()) < 1e-15);
}

TEST_CASE("dephasing") {
  const DensityMatrix d = dephase_site(bell_pair(), 0);
  ComplexMatrix expect = ComplexMatrix::Zero(4, 4);
  expect(0, 0) = expect(3, 3) = 0.5;
  CHECK(max_abs_diff(d.matrix(), expect) < 1e-15);
  const DensityMatrix diag = maximally_mixed(SystemLayout({2, 3}));
  CHECK(max_abs_diff(dephase_site(diag, 1).matrix(), diag.matrix()) == 0.0);
}

TEST_CASE("permute and regroup") {
  std::mt19937_64 rng(1);
  const DensityMatrix a = random_state(SystemLayout({2}), rng);
  const DensityMatrix b = random_state(SystemLayout({3}), rng);
  const DensityMatrix swapped = permute_sites(tensor_product(a, b), {1, 0});
  CHECK(swapped.layout().dims() == std::vector<int>{3, 2});
  CHECK(max_abs_diff(swapped.matrix(), tensor_product(b, a).matrix()) < 1e-15);

  const DensityMatrix four = bell_pairs(2);
  const DensityMatrix grouped = regroup(four, {{0, 1}, {2, 3}});
  CHECK(grouped.layout().dims() == std::vector<int>{4, 4});
  CHECK(max_abs_diff(grouped.matrix(), four.matrix()) == 0.0);
  CHECK_THROWS_AS(regroup(four, {{0, 1}, {1, 2, 3}}), ValidationError);
  CHECK_THROWS_AS(regroup(four, {{0, 1}}), ValidationError);
}

TEST_CASE("split into qubits") {
  const DensityMatrix g = grid_pair_state(2, 2, 1.0);
  const QubitRefinement q = split_into_qubits(g);
  CHECK(q.state.sites() == 8);
  CHECK(q.owner == std::vector<int>{0, 0, 1, 1, 2, 2, 3, 3});
}

TEST_CASE("werner and bell states") {
  CHECK(max_abs_diff(werner(0.0).matrix(), ComplexMatrix::Identity(4, 4) / 4.0) < 1e-15);
  CHECK(max_abs_diff(werner(1.0).matrix(), bell_pair().matrix()) < 1e-15);
  CHECK_THROWS_AS(werner(1.5), ValidationError);
  CHECK_THROWS_AS(werner(-0.1), ValidationError);
  CHECK(bell_pairs(3).sites() == 6);
}

TEST_CASE("W states") {
  CHECK(w_state(1).matrix()(1, 1) == Complex(1.0));
  ComplexMatrix psi_plus = ComplexMatrix::Zero(4, 4);
  psi_plus(1, 1) = psi_plus(1, 2) = psi_plus(2, 1) = psi_plus(2, 2) = 0.5;
  CHECK(max_abs_diff(w_state(2).matrix(), psi_plus) < 1e-15);
  CHECK_THROWS_AS(w_state(0), ValidationError);

  for (int n = 2; n <= 6; ++n) {
    const DensityMatrix w = w_state(n);
    CHECK(std::abs(w.matrix().trace().real() - 1.0) < 1e-14);
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        std::vector<int> order(static_cast<std::size_t>(n));
        std::iota(order.begin(), order.end(), 0);
        std::swap(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(j)]);
        CHECK(max_abs_diff(permute_sites(w, order).matrix(), w.matrix()) < 1e-15);
      }
    }
  }
}

TEST_CASE("reduced W state matches brute force") {
  for (int n = 2; n <= 7; ++n) {
    const DensityMatrix w = w_state(n);
    CHECK(max_abs_diff(w_reduced(n, n).matrix(), w.matrix()) < 1e-14);
    for (int k = 1; k <= n; ++k) {
      SiteSet keep;
      for (int s = n - k; s < n; ++s) keep.push_back(s);
      CAPTURE(n);
      CAPTURE(k);
      CHECK(max_abs_diff(w_reduced(n, k).matrix(), partial_trace(w, keep).matrix()) < 1e-12);
    }
  }
  CHECK(max_abs_diff(w_reduced(3, 2).matrix(), psi_plus_mix(1.0 / 3).matrix()) < 1e-15);
  CHECK_THROWS_AS(w_reduced(3, 4), ValidationError);
}

TEST_CASE("compact W marginal") {
  const DensityMatrix c = w_reduced_compact(2, 2, 1);
  CHECK(c.matrix()(0, 0) == Complex(0.0));
  CHECK(std::abs(c.matrix()(1, 1).real() - 0.5) < 1e-15);
  CHECK(std::abs(c.matrix()(1, 2).real() - 0.5) < 1e-15);
  CHECK(c.matrix()(3, 3) == Complex(0.0));
  for (int n = 2; n <= 12; ++n)
    for (int k = 2; k <= n; ++k)
      for (int j = 1; j < k; ++j) CHECK(std::abs(w_reduced_compact(n, k, j).matrix().trace().real() - 1.0) < 1e-14);
  CHECK_THROWS_AS(w_reduced_compact(3, 2, 2), ValidationError);
}

TEST_CASE("cluster states") {
  const DensityMatrix one = cluster_state(path_graph(1));
  CHECK(max_abs_diff(one.matrix(), ComplexMatrix::Constant(2, 2, 0.5)) < 1e-15);
  const DensityMatrix line = cluster_state(path_graph(4));
  CHECK(std::abs((line.matrix() * line.matrix()).trace().real() - 1.0) < 1e-13);
  // Tracing an end qubit dephases its neighbor.
  const DensityMatrix p3 = cluster_state(path_graph(3));
  const DensityMatrix mid = partial_trace(p3, {0, 1});
  CHECK(max_abs_diff(dephase_site(mid, 1).matrix(), mid.matrix()) < 1e-14);
}

TEST_CASE("grid pair states") {
  const DensityMatrix edge = grid_pair_state(1, 2, 0.7);
  CHECK(edge.layout().dims() == std::vector<int>{2, 2});
  CHECK(max_abs_diff(edge.matrix(), werner(0.7).matrix()) < 1e-15);

  const DensityMatrix g = grid_pair_state(2, 2, 1.0);
  CHECK(g.layout().dims() == std::vector<int>{4, 4, 4, 4});
  for (int v = 0; v < 4; ++v)
    CHECK(max_abs_diff(partial_trace(g, {v}).matrix(), ComplexMatrix::Identity(4, 4) / 4.0) < 1e-14);
  CHECK_THROWS_AS(grid_pair_state(2, 3, 1.0), CapacityError);
}

TEST_CASE("phase cat states") {
  CHECK(max_abs_diff(phase_cat(1, 0.0).matrix(), ComplexMatrix::Constant(2, 2, 0.5)) < 1e-15);
  const DensityMatrix zero = phase_cat(5, 0.0);
  for (double phi : {std::numbers::pi / 4, std::numbers::pi / 2, std::numbers::pi}) {
    const DensityMatrix s = phase_cat(5, phi);
    for (int drop = 0; drop < 5; ++drop) {
      SiteSet keep;
      for (int q = 0; q < 5; ++q)
        if (q != drop) keep.push_back(q);
      CHECK(trace_distance(partial_trace(s, keep), partial_trace(zero, keep)) <= 1e-12);
    }
  }
  CHECK(trace_distance(phase_cat(5, std::numbers::pi), zero) > 0.4);
}

TEST_CASE("state size guard") {
  CHECK_THROWS_AS(w_state(11), CapacityError);
}
