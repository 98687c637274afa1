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

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace kalaik {

using BigInt = boost::multiprecision::cpp_int;

/// Vertex subset of a graph with at most 64 vertices, bit i = vertex i.
struct SubsetMask {
  std::uint64_t bits = 0;

  int size() const noexcept;
  bool contains(int v) const noexcept { return (bits >> v) & 1u; }
  std::vector<int> vertices() const;

  friend bool operator==(SubsetMask, SubsetMask) = default;
  friend auto operator<=>(SubsetMask, SubsetMask) = default;
};

/// Simple undirected graph: no self-loops, no duplicate edges.
class Graph {
 public:
  Graph(int vertex_count, std::vector<std::pair<int, int>> edges);

  int vertex_count() const noexcept { return vertex_count_; }
  const std::vector<std::pair<int, int>>& edges() const noexcept { return edges_; }
  const std::vector<int>& neighbors(int v) const { return adjacency_.at(static_cast<std::size_t>(v)); }
  int degree(int v) const { return static_cast<int>(neighbors(v).size()); }

  /// Neighbor sets as bitmasks; requires vertex_count <= 64.
  std::vector<std::uint64_t> neighbor_masks() const;

 private:
  int vertex_count_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<std::vector<int>> adjacency_;
};

/// rows x cols grid, vertex r*cols + c, 4-neighbor edges. Edges are listed in
/// row-major vertex order, each vertex contributing its right edge then its
/// down edge.
Graph grid_graph(int rows, int cols);

Graph path_graph(int n);

/// Breadth-first reachability inside the induced subgraph.
bool is_connected_subset(const Graph& g, SubsetMask s);

/// Same test for graphs of any size.
bool is_connected_vertex_set(const Graph& g, std::span<const int> vertices);

/// Largest graph accepted by count_connected_subsets.
inline constexpr int kMaxCountVertices = 30;

/// Exact number of vertex subsets of size >= min_size whose induced subgraph
/// is connected. Each connected set is generated exactly once by growing it
/// from its smallest vertex.
std::uint64_t count_connected_subsets(const Graph& g, int min_size = 2);

/// Spine-and-teeth vertex pattern on a grid. `blue` is connected and every
/// `free` vertex touches it, so blue plus any subset of free is connected.
struct CombSpec {
  int rows = 0;
  int cols = 0;
  /// Spine runs down column 1 instead of along row 1.
  bool transposed = false;
  std::vector<int> teeth;  ///< positions along the spine carrying a tooth
  std::vector<int> blue;
  std::vector<int> free;
};

/// Spine on the second line of the grid (which dominates the first), teeth
/// every third position starting at 1, plus one at the far end when the last
/// position would otherwise be uncovered. Both orientations are built and the
/// one leaving more free vertices wins. Invariants are checked on return.
CombSpec comb_spec(int rows, int cols);

/// 2^|free|, a lower bound on count_connected_subsets(grid_graph(rows, cols), 2).
BigInt comb_lower_bound(int rows, int cols);

}  // namespace kalaik
