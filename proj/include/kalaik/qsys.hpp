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

#include "kalaik/gridcount.hpp"
#include "kalaik/linalg.hpp"

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

namespace kalaik {

/// Sorted list of distinct site indices.
using SiteSet = std::vector<int>;

/// Largest Hilbert-space dimension any dense state constructor will build.
inline constexpr std::size_t kMaxStateDim = 1024;

/// Ordered site dimensions. Site 0 is the most significant tensor factor.
class SystemLayout {
 public:
  explicit SystemLayout(std::vector<int> dims);

  static SystemLayout qubits(int n);

  int sites() const noexcept { return static_cast<int>(dims_.size()); }
  int dim(int site) const { return dims_.at(static_cast<std::size_t>(site)); }
  const std::vector<int>& dims() const noexcept { return dims_; }
  std::size_t total_dim() const noexcept { return total_; }
  /// Index step of `site` in the full basis.
  std::size_t stride(int site) const { return strides_.at(static_cast<std::size_t>(site)); }
  /// Product of the dimensions of `sites`.
  std::size_t dim_of(const SiteSet& sites) const;

  SystemLayout restricted_to(const SiteSet& keep) const;

  friend bool operator==(const SystemLayout& a, const SystemLayout& b) { return a.dims_ == b.dims_; }

 private:
  std::vector<int> dims_;
  std::vector<std::size_t> strides_;
  std::size_t total_ = 1;
};

/// Unit-trace PSD Hermitian matrix annotated with its tensor layout.
class DensityMatrix {
 public:
  /// Validates Hermiticity, unit trace and PSD-ness within `tol`.
  DensityMatrix(ComplexMatrix matrix, SystemLayout layout, double tol = 1e-10);

  /// Projector onto `psi`; `psi` must have unit norm within 1e-10.
  static DensityMatrix from_pure(const ComplexVector& psi, SystemLayout layout);

  /// Checks shape only. For results of operations that preserve the density
  /// matrix invariants (partial trace, regrouping, dephasing).
  static DensityMatrix unchecked(ComplexMatrix matrix, SystemLayout layout);

  const ComplexMatrix& matrix() const noexcept { return matrix_; }
  const SystemLayout& layout() const noexcept { return layout_; }
  int sites() const noexcept { return layout_.sites(); }
  Eigen::Index dim() const noexcept { return matrix_.rows(); }

 private:
  struct NoCheck {};
  DensityMatrix(ComplexMatrix matrix, SystemLayout layout, NoCheck);

  ComplexMatrix matrix_;
  SystemLayout layout_;
};

/// Split of a site set into two nonempty disjoint parts (A, A^c).
class Bipartition {
 public:
  Bipartition(SiteSet a, SiteSet b);

  /// A = sites whose bit is set in `a_mask`, B = the remaining sites.
  static Bipartition from_mask(std::uint64_t a_mask, int n_sites);

  const SiteSet& a() const noexcept { return a_; }
  const SiteSet& b() const noexcept { return b_; }
  std::uint64_t a_mask() const noexcept;
  Bipartition swapped() const { return Bipartition(b_, a_); }

  /// Throws unless A and B together cover exactly the layout's sites.
  void check_covers(const SystemLayout& layout) const;

  friend bool operator==(const Bipartition&, const Bipartition&) = default;

 private:
  SiteSet a_;
  SiteSet b_;
};

/// All 2^(n-1) - 1 cuts of n sites, each listed once with site 0 in A, in
/// ascending order of the A mask.
std::vector<Bipartition> all_bipartitions(int n_sites);

DensityMatrix partial_trace(const DensityMatrix& rho, const SiteSet& keep);

/// Transpose of the factors listed in `sites`.
ComplexMatrix partial_transpose(const ComplexMatrix& m, const SystemLayout& layout, const SiteSet& sites);

/// Gamma applied to the B side of `cut`.
ComplexMatrix partial_transpose(const DensityMatrix& rho, const Bipartition& cut);

/// Zeroes every block that is off-diagonal in the computational basis of `site`.
DensityMatrix dephase_site(const DensityMatrix& rho, int site);

/// New site p is old site order[p].
DensityMatrix permute_sites(const DensityMatrix& rho, const std::vector<int>& order);

/// Reorders sites to the concatenation of `groups`, then fuses each group
/// into one site whose dimension is the product of its members.
DensityMatrix regroup(const DensityMatrix& rho, const std::vector<SiteSet>& groups);

/// Reinterprets every site of dimension 2^m as m qubit sites (same matrix).
/// `owner[q]` is the original site of refined site q.
struct QubitRefinement {
  DensityMatrix state;
  std::vector<int> owner;
};
QubitRefinement split_into_qubits(const DensityMatrix& rho);

DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b);

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);

DensityMatrix maximally_mixed(const SystemLayout& layout);

/// |Phi+> = (|00> + |11>)/sqrt(2).
DensityMatrix bell_pair();

/// p |Phi+><Phi+| + (1 - p) I/4.
DensityMatrix werner(double p);

/// `pairs` Bell pairs on 2*pairs qubit sites; pair i occupies sites 2i, 2i+1.
DensityMatrix bell_pairs(int pairs);

ComplexVector w_vector(int n);
DensityMatrix w_state(int n);

/// Closed form of the W state with n - k qubits traced out:
/// ((n-k)/n)|0^k><0^k| + (k/n)|W_k><W_k|.
DensityMatrix w_reduced(int n, int k);

/// The same state written in the two-site basis {|0^j>,|W_j>} x
/// {|0^(k-j)>,|W_(k-j)>}, entries in the order diag(1 - k/n, j/n,
/// (k-j)/n, 0) with coupling sqrt(j(k-j))/n between the two middle basis
/// states. Relative to w_reduced the middle diagonal pair is swapped; the
/// spectrum and negativity are unchanged.
DensityMatrix w_reduced_compact(int n, int k, int j);

/// |+>^n followed by controlled-Z on every edge.
DensityMatrix cluster_state(const Graph& graph);

/// Largest qubit count grid_pair_state will materialize.
inline constexpr int kMaxGridQubits = 8;

/// One werner(p) pair per grid edge, each qubit placed at its endpoint, then
/// each vertex's qubits (in edge order) fused into a 2^degree qudit.
DensityMatrix grid_pair_state(int rows, int cols, double p);

/// (|0^n> + e^{i phi} |1^n>)/sqrt(2).
DensityMatrix phase_cat(int n, double phi);

}  // namespace kalaik
