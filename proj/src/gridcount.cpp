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

#include "kalaik/gridcount.hpp"

#include "kalaik/error.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <set>
#include <string>

namespace kalaik {

int SubsetMask::size() const noexcept { return std::popcount(bits); }

std::vector<int> SubsetMask::vertices() const {
  std::vector<int> out;
  for (std::uint64_t b = bits; b != 0; b &= b - 1) out.push_back(std::countr_zero(b));
  return out;
}

Graph::Graph(int vertex_count, std::vector<std::pair<int, int>> edges)
    : vertex_count_(vertex_count), edges_(std::move(edges)) {
  if (vertex_count_ < 0) throw ValidationError("graph: negative vertex count");
  adjacency_.resize(static_cast<std::size_t>(vertex_count_));
  std::set<std::pair<int, int>> seen;
  for (const auto& [u, v] : edges_) {
    if (u < 0 || v < 0 || u >= vertex_count_ || v >= vertex_count_)
      throw ValidationError("graph: edge endpoint out of range");
    if (u == v) throw ValidationError("graph: self-loop at vertex " + std::to_string(u));
    if (!seen.insert(std::minmax(u, v)).second)
      throw ValidationError("graph: duplicate edge " + std::to_string(u) + "-" + std::to_string(v));
    adjacency_[static_cast<std::size_t>(u)].push_back(v);
    adjacency_[static_cast<std::size_t>(v)].push_back(u);
  }
}

std::vector<std::uint64_t> Graph::neighbor_masks() const {
  if (vertex_count_ > 64) throw CapacityError("graph: bitmask operations support at most 64 vertices");
  std::vector<std::uint64_t> out(static_cast<std::size_t>(vertex_count_), 0);
  for (const auto& [u, v] : edges_) {
    out[static_cast<std::size_t>(u)] |= std::uint64_t{1} << v;
    out[static_cast<std::size_t>(v)] |= std::uint64_t{1} << u;
  }
  return out;
}

Graph grid_graph(int rows, int cols) {
  if (rows < 1 || cols < 1) throw ValidationError("grid_graph: rows and cols must be >= 1");
  std::vector<std::pair<int, int>> edges;
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      const int v = r * cols + c;
      if (c + 1 < cols) edges.emplace_back(v, v + 1);
      if (r + 1 < rows) edges.emplace_back(v, v + cols);
    }
  }
  return Graph(rows * cols, std::move(edges));
}

Graph path_graph(int n) {
  if (n < 1) throw ValidationError("path_graph: n must be >= 1");
  std::vector<std::pair<int, int>> edges;
  for (int v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
  return Graph(n, std::move(edges));
}

bool is_connected_subset(const Graph& g, SubsetMask s) {
  if (s.bits == 0) throw ValidationError("is_connected_subset: empty vertex set");
  if (g.vertex_count() < 64 && (s.bits >> g.vertex_count()) != 0)
    throw ValidationError("is_connected_subset: mask names vertices outside the graph");
  const auto nbr = g.neighbor_masks();
  std::uint64_t reached = s.bits & (~s.bits + 1);  // lowest vertex
  std::uint64_t frontier = reached;
  while (frontier != 0) {
    std::uint64_t next = 0;
    for (std::uint64_t b = frontier; b != 0; b &= b - 1)
      next |= nbr[static_cast<std::size_t>(std::countr_zero(b))];
    next &= s.bits & ~reached;
    reached |= next;
    frontier = next;
  }
  return reached == s.bits;
}

bool is_connected_vertex_set(const Graph& g, std::span<const int> vertices) {
  if (vertices.empty()) throw ValidationError("is_connected_vertex_set: empty vertex set");
  std::vector<char> in_set(static_cast<std::size_t>(g.vertex_count()), 0);
  for (int v : vertices) {
    if (v < 0 || v >= g.vertex_count()) throw ValidationError("is_connected_vertex_set: vertex out of range");
    in_set[static_cast<std::size_t>(v)] = 1;
  }
  std::vector<char> seen(in_set.size(), 0);
  std::deque<int> queue{vertices.front()};
  seen[static_cast<std::size_t>(vertices.front())] = 1;
  std::size_t reached = 1;
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    for (int w : g.neighbors(u)) {
      const auto wi = static_cast<std::size_t>(w);
      if (in_set[wi] && !seen[wi]) {
        seen[wi] = 1;
        ++reached;
        queue.push_back(w);
      }
    }
  }
  const auto distinct = static_cast<std::size_t>(std::count(in_set.begin(), in_set.end(), 1));
  return reached == distinct;
}

namespace {

struct ConnectedCounter {
  const std::vector<std::uint64_t>& nbr;
  int min_size;
  std::uint64_t count = 0;

  // `set` is connected; `cand` is its boundary minus `forbidden`.
  void grow(std::uint64_t set, std::uint64_t cand, std::uint64_t forbidden) {
    if (std::popcount(set) >= min_size) ++count;
    while (cand != 0) {
      const int v = std::countr_zero(cand);
      const std::uint64_t bit = std::uint64_t{1} << v;
      cand &= ~bit;
      const std::uint64_t grown = set | bit;
      const std::uint64_t next = (cand | nbr[static_cast<std::size_t>(v)]) & ~grown & ~forbidden;
      grow(grown, next, forbidden);
      forbidden |= bit;
    }
  }
};

}  // namespace

std::uint64_t count_connected_subsets(const Graph& g, int min_size) {
  if (g.vertex_count() > kMaxCountVertices) {
    throw CapacityError("count_connected_subsets: " + std::to_string(g.vertex_count()) +
                        " vertices exceeds the exact-enumeration limit of " +
                        std::to_string(kMaxCountVertices) + "; use comb_lower_bound instead");
  }
  const auto nbr = g.neighbor_masks();
  ConnectedCounter counter{nbr, std::max(min_size, 1)};
  for (int root = 0; root < g.vertex_count(); ++root) {
    const std::uint64_t root_bit = std::uint64_t{1} << root;
    const std::uint64_t below = root_bit - 1;  // vertices smaller than root are excluded
    counter.grow(root_bit, nbr[static_cast<std::size_t>(root)] & ~below, below | root_bit);
  }
  return counter.count;
}

namespace {

std::vector<int> tooth_positions(int length) {
  std::vector<int> teeth;
  for (int p = 1; p < length; p += 3) teeth.push_back(p);
  if (teeth.empty()) teeth.push_back(0);
  if (length - 1 - teeth.back() > 1) teeth.push_back(length - 1);
  return teeth;
}

// Spine along row 1 of a rows x cols grid with teeth hanging down from it.
CombSpec build_comb(int rows, int cols) {
  CombSpec spec;
  spec.rows = rows;
  spec.cols = cols;
  spec.teeth = tooth_positions(cols);
  std::vector<char> blue(static_cast<std::size_t>(rows * cols), 0);
  for (int c = 0; c < cols; ++c) blue[static_cast<std::size_t>(cols + c)] = 1;
  for (int c : spec.teeth)
    for (int r = 2; r < rows; ++r) blue[static_cast<std::size_t>(r * cols + c)] = 1;
  for (int v = 0; v < rows * cols; ++v) (blue[static_cast<std::size_t>(v)] ? spec.blue : spec.free).push_back(v);
  return spec;
}

CombSpec transpose_comb(const CombSpec& t, int rows, int cols) {
  // `t` was built on the cols x rows grid; map vertex r'*rows + c' to c'*cols + r'.
  CombSpec spec;
  spec.rows = rows;
  spec.cols = cols;
  spec.transposed = true;
  spec.teeth = t.teeth;
  auto map = [&](int v) { return (v % rows) * cols + v / rows; };
  for (int v : t.blue) spec.blue.push_back(map(v));
  for (int v : t.free) spec.free.push_back(map(v));
  std::sort(spec.blue.begin(), spec.blue.end());
  std::sort(spec.free.begin(), spec.free.end());
  return spec;
}

void check_comb(const CombSpec& spec) {
  const Graph g = grid_graph(spec.rows, spec.cols);
  if (spec.blue.size() + spec.free.size() != static_cast<std::size_t>(g.vertex_count()))
    throw ValidationError("comb_spec: blue and free do not partition the grid");
  if (spec.blue.size() < 2) throw ValidationError("comb_spec: fewer than two blue vertices");
  if (!is_connected_vertex_set(g, spec.blue)) throw ValidationError("comb_spec: blue set is disconnected");
  std::vector<char> is_blue(static_cast<std::size_t>(g.vertex_count()), 0);
  for (int v : spec.blue) is_blue[static_cast<std::size_t>(v)] = 1;
  for (int v : spec.free) {
    if (is_blue[static_cast<std::size_t>(v)]) throw ValidationError("comb_spec: blue and free overlap");
    const auto& nb = g.neighbors(v);
    if (std::none_of(nb.begin(), nb.end(), [&](int w) { return is_blue[static_cast<std::size_t>(w)] != 0; }))
      throw ValidationError("comb_spec: free vertex " + std::to_string(v) + " has no blue neighbor");
  }
}

}  // namespace

CombSpec comb_spec(int rows, int cols) {
  if (rows < 2 || cols < 3) throw ValidationError("comb_spec: need rows >= 2 and cols >= 3");
  CombSpec best = build_comb(rows, cols);
  CombSpec alt = transpose_comb(build_comb(cols, rows), rows, cols);
  if (alt.free.size() > best.free.size()) best = std::move(alt);
  check_comb(best);
  return best;
}

BigInt comb_lower_bound(int rows, int cols) {
  const CombSpec spec = comb_spec(rows, cols);
  BigInt bound = 1;
  bound <<= static_cast<unsigned>(spec.free.size());
  return bound;
}

}  // namespace kalaik
