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

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero when any criterion fails.

#include "kalaik/entanglement.hpp"
#include "kalaik/error.hpp"
#include "kalaik/gridcount.hpp"
#include "kalaik/kmeasure.hpp"
#include "kalaik/qsys.hpp"
#include "kalaik/sepdist.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

using namespace kalaik;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (pass) detail << "failed: ";
      else detail << "; ";
      detail << what;
      pass = false;
    }
  }
};

int failures = 0;

void report(int id, const std::string& title, const std::function<void(Outcome&)>& body) {
  Outcome o;
  const auto t0 = Clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail << "exception: " << e.what();
  }
  const double s = seconds_since(t0);
  if (!o.pass) ++failures;
  std::printf("criterion %2d %s  %-44s %7.2fs  %s\n", id, o.pass ? "PASS" : "FAIL", title.c_str(), s,
              o.detail.str().c_str());
  std::fflush(stdout);
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

SiteSet first_sites(int k) {
  SiteSet s(static_cast<std::size_t>(k));
  std::iota(s.begin(), s.end(), 0);
  return s;
}

std::uint64_t naive_connected(const Graph& g) {
  const int n = g.vertex_count();
  std::uint64_t count = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    if (std::popcount(mask) < 2) continue;
    std::vector<int> parent(static_cast<std::size_t>(n));
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    for (auto [a, b] : g.edges())
      if (((mask >> a) & 1u) && ((mask >> b) & 1u)) parent[find(a)] = find(b);
    int roots = 0;
    for (int v = 0; v < n; ++v)
      if (((mask >> v) & 1u) && find(v) == v) ++roots;
    if (roots == 1) ++count;
  }
  return count;
}

bool comb_connected(int rows, int cols) {
  const CombSpec spec = comb_spec(rows, cols);
  const Graph g = grid_graph(rows, cols);
  std::uint64_t blue = 0;
  for (int v : spec.blue) blue |= std::uint64_t{1} << v;
  const std::size_t f = spec.free.size();
  for (std::uint64_t sub = 0; sub < (std::uint64_t{1} << f); ++sub) {
    std::uint64_t mask = blue;
    for (std::size_t i = 0; i < f; ++i)
      if ((sub >> i) & 1u) mask |= std::uint64_t{1} << spec.free[i];
    if (!is_connected_subset(g, SubsetMask{mask})) return false;
  }
  return true;
}

}  // namespace

int main() {
  report(1, "W marginal negativity closed form", [](Outcome& o) {
    const auto t0 = Clock::now();
    double worst = 0.0;
    for (int n = 2; n <= 7; ++n) {
      const DensityMatrix w = w_state(n);
      for (int k = 2; k <= n; ++k) {
        const DensityMatrix marginal = partial_trace(w, first_sites(k));
        for (int j = 1; j <= k / 2; ++j) {
          SiteSet a = first_sites(j), b;
          for (int s = j; s < k; ++s) b.push_back(s);
          const double brute = negativity(marginal, Bipartition(a, b)).negativity;
          worst = std::max(worst, std::abs(w_negativity(n, k, j) - brute));
        }
      }
    }
    const double s = seconds_since(t0);
    o.require(worst <= 1e-9, "max deviation " + fmt(worst));
    o.require(s <= 60.0, "runtime " + fmt(s) + "s");
    if (o.pass) o.detail << "max deviation " << fmt(worst);
  });

  report(2, "reference sum identity, n = 2..20", [](Outcome& o) {
    for (int n = 2; n <= 20; ++n) {
      const ReferenceWFormula f = k_reference_w_formula(n);
      o.require(f.equal && f.lhs == f.rhs, "n = " + std::to_string(n));
    }
    if (o.pass) o.detail << "exact rational equality";
  });

  report(3, "variant closed form regression at (3,2,1)", [](Outcome& o) {
    const DensityMatrix marginal = partial_trace(w_state(3), {0, 1});
    const double brute = negativity(marginal, Bipartition({0}, {1})).negativity;
    const double printed = std::abs(w_negativity_printed(3, 2, 1) - brute);
    const double derived = std::abs(w_negativity(3, 2, 1) - brute);
    o.require(printed > 0.2, "variant deviation " + fmt(printed));
    o.require(derived <= 1e-9, "eigenvalue form deviation " + fmt(derived));
    if (o.pass) o.detail << "variant off by " << fmt(printed) << ", eigenvalue form off by " << fmt(derived);
  });

  report(4, "two-qubit solver benchmarks", [](Outcome& o) {
    const Bipartition cut({0}, {1});
    auto timed = [&](const DensityMatrix& rho, const char* name) {
      const auto t0 = Clock::now();
      PptDistanceResult r = ppt_distance(rho, cut);
      const double s = seconds_since(t0);
      o.require(s <= 10.0, std::string(name) + " runtime " + fmt(s) + "s");
      return r;
    };
    const PptDistanceResult bell = timed(bell_pair(), "bell");
    o.require(bell.bounds.lower >= 0.499 && bell.bounds.upper <= 0.501,
              "bell [" + fmt(bell.bounds.lower) + ", " + fmt(bell.bounds.upper) + "]");
    o.require(bell.bounds.lower_certificate == "witness", "bell lower certificate " + bell.bounds.lower_certificate);
    const PptDistanceResult werner3 = timed(werner(1.0 / 3), "werner");
    o.require(werner3.bounds.upper <= 1e-3, "werner(1/3) upper " + fmt(werner3.bounds.upper));
    ComplexMatrix m = ComplexMatrix::Zero(4, 4);
    m(0, 0) = m(0, 1) = m(1, 0) = m(1, 1) = 0.5;
    const PptDistanceResult product = timed(DensityMatrix(m, SystemLayout::qubits(2)), "product");
    o.require(product.bounds.upper <= 1e-6, "product upper " + fmt(product.bounds.upper));
    if (o.pass)
      o.detail << "bell [" << fmt(bell.bounds.lower) << ", " << fmt(bell.bounds.upper) << "], werner(1/3) "
               << fmt(werner3.bounds.upper) << ", product " << fmt(product.bounds.upper);
  });

  report(5, "two Bell pairs", [](Outcome& o) {
    const KReport r = k_measure(bell_pairs(2));
    o.require(r.k_lower >= 0.99 && r.k_upper <= 1.01, "K in [" + fmt(r.k_lower) + ", " + fmt(r.k_upper) + "]");
    std::size_t nonzero = 0;
    for (const SubsetDelta& s : r.per_subset)
      if (s.delta.upper > 0.0) ++nonzero;
    o.require(nonzero == 2, std::to_string(nonzero) + " contributing subsets");
    o.require(r.certified_zero.size() == 9, std::to_string(r.certified_zero.size()) + " certified zero");
    if (o.pass) o.detail << "K in [" << fmt(r.k_lower) << ", " << fmt(r.k_upper) << "], 2 contribute, 9 certified";
  });

  report(6, "2x2 grid of Bell pairs", [](Outcome& o) {
    const GridVerifyReport v = k_grid_verify_small(2, 2, 1.0);
    int connected = 0, certified = 0;
    for (const GridSubsetCheck& c : v.subsets) {
      if (c.connected) {
        ++connected;
        o.require(c.delta.bounds.lower >= 0.5 - 1e-3,
                  "subset " + std::to_string(c.mask.bits) + " lower " + fmt(c.delta.bounds.lower));
      } else {
        const bool zero = c.delta.certificate && c.delta.bounds.lower == 0.0 && c.delta.bounds.upper == 0.0;
        o.require(zero, "subset " + std::to_string(c.mask.bits) + " not certified");
        if (zero) ++certified;
      }
    }
    o.require(connected == 9 && certified == 2, "counts " + std::to_string(connected) + "/" + std::to_string(certified));
    const GridKReport g = k_grid_lower(2, 2, 1.0);
    o.require(std::abs(g.k_lower - 4.5) <= 1e-2, "k_grid_lower " + fmt(g.k_lower));
    if (o.pass) o.detail << "9 connected >= 0.499, 2 disconnected certified, k_grid_lower " << fmt(g.k_lower);
  });

  report(7, "connected subset counting", [](Outcome& o) {
    int grids = 0;
    for (int r = 1; r <= 12; ++r)
      for (int c = 1; r * c <= 12; ++c) {
        const Graph g = grid_graph(r, c);
        ++grids;
        o.require(count_connected_subsets(g, 2) == naive_connected(g),
                  std::to_string(r) + "x" + std::to_string(c) + " mismatch");
      }
    o.require(count_connected_subsets(grid_graph(2, 2), 2) == 9, "2x2 count");
    for (auto [r, c] : {std::pair{3, 3}, {3, 4}, {3, 6}})
      o.require(comb_lower_bound(r, c) <= count_connected_subsets(grid_graph(r, c), 2),
                "comb bound above exact on " + std::to_string(r) + "x" + std::to_string(c));
    int combs = 0;
    for (int r = 1; r <= 18; ++r)
      for (int c = 1; r * c <= 18; ++c) {
        if (r < 2 || c < 3) continue;
        ++combs;
        o.require(comb_connected(r, c), "comb disconnected on " + std::to_string(r) + "x" + std::to_string(c));
      }
    if (o.pass) o.detail << grids << " grids vs oracle, " << combs << " comb layouts exhaustive";
  });

  report(8, "4-qubit path cluster state", [](Outcome& o) {
    const DensityMatrix rho = cluster_state(path_graph(4));
    int certified = 0;
    for (std::uint64_t mask = 1; mask < 15; ++mask) {
      if (std::popcount(mask) < 2) continue;
      const DeltaResult d = delta_bounds(partial_trace(rho, SubsetMask{mask}.vertices()));
      const bool ok = d.certificate && (d.certificate->kind == CertificateKind::block_diagonal ||
                                        d.certificate->kind == CertificateKind::product);
      o.require(ok, "subset " + std::to_string(mask) + " uncertified");
      if (ok) ++certified;
    }
    const DeltaResult full = delta_bounds(rho);
    o.require(full.bounds.lower >= 0.1, "full set lower " + fmt(full.bounds.lower));
    if (o.pass) o.detail << certified << " proper subsets certified, full set lower " << fmt(full.bounds.lower);
  });

  report(9, "phase cat marginals", [](Outcome& o) {
    const int n = 5;
    const DensityMatrix ref = phase_cat(n, 0.0);
    double worst = 0.0;
    for (double phi : {0.0, std::numbers::pi / 4, std::numbers::pi / 2, std::numbers::pi}) {
      const DensityMatrix state = phase_cat(n, phi);
      for (int drop = 0; drop < n; ++drop) {
        SiteSet keep;
        for (int s = 0; s < n; ++s)
          if (s != drop) keep.push_back(s);
        worst = std::max(worst, trace_distance(partial_trace(state, keep), partial_trace(ref, keep)));
      }
    }
    const double full = trace_distance(phase_cat(n, std::numbers::pi), ref);
    o.require(worst <= 1e-12, "marginal distance " + fmt(worst));
    o.require(full >= 0.4, "full distance " + fmt(full));
    if (o.pass) o.detail << "max marginal distance " << fmt(worst) << ", full distance " << fmt(full);
  });

  report(10, "growth signature", [](Outcome& o) {
    std::ostringstream ratios;
    for (int n = 4; n <= 8; ++n) {
      const double a = k_w_lower(n).k_w_lower;
      const double b = k_w_lower(n + 1).k_w_lower;
      o.require(b > a && b / a >= 1.5, "ratio at n = " + std::to_string(n) + " is " + fmt(b / a));
      ratios << (n > 4 ? " " : "") << fmt(b / a);
    }
    for (int m = 1; m <= 10; ++m) {
      const std::uint64_t expect = static_cast<std::uint64_t>(m) * (m - 1) / 2;
      o.require(count_connected_subsets(grid_graph(1, m), 2) == expect, "chain 1x" + std::to_string(m));
    }
    if (o.pass) o.detail << "k_w_lower ratios " << ratios.str() << ", chains m(m-1)/2";
  });

  std::printf("%s: %d failing criteria\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
