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

#include "kalaik/qsys.hpp"

#include "kalaik/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace kalaik {

namespace {

void check_dim_budget(std::size_t dim, const char* what) {
  if (dim > kMaxStateDim) {
    throw CapacityError(std::string(what) + ": dimension " + std::to_string(dim) +
                        " exceeds the dense limit of " + std::to_string(kMaxStateDim));
  }
}

// Full-space offsets of every basis state of the sub-register `sites`, the
// last listed site varying fastest.
std::vector<std::size_t> offsets(const SystemLayout& layout, const SiteSet& sites) {
  std::vector<std::size_t> out{0};
  for (int s : sites) {
    std::vector<std::size_t> next;
    next.reserve(out.size() * static_cast<std::size_t>(layout.dim(s)));
    for (std::size_t base : out)
      for (int d = 0; d < layout.dim(s); ++d) next.push_back(base + static_cast<std::size_t>(d) * layout.stride(s));
    out = std::move(next);
  }
  return out;
}

SiteSet complement(const SiteSet& sites, int n) {
  SiteSet out;
  for (int s = 0; s < n; ++s)
    if (!std::binary_search(sites.begin(), sites.end(), s)) out.push_back(s);
  return out;
}

SiteSet normalized_sites(SiteSet sites, int n_sites, const char* what) {
  std::sort(sites.begin(), sites.end());
  if (std::adjacent_find(sites.begin(), sites.end()) != sites.end())
    throw ValidationError(std::string(what) + ": repeated site index");
  for (int s : sites)
    if (s < 0 || s >= n_sites)
      throw ValidationError(std::string(what) + ": site " + std::to_string(s) + " out of range");
  return sites;
}

ComplexVector basis_ket(std::size_t dim, std::size_t index) {
  ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(dim));
  v(static_cast<Eigen::Index>(index)) = 1.0;
  return v;
}

ComplexMatrix projector(const ComplexVector& v) { return v * v.adjoint(); }

}  // namespace

// ---------------------------------------------------------------------------
// SystemLayout

SystemLayout::SystemLayout(std::vector<int> dims) : dims_(std::move(dims)) {
  if (dims_.empty()) throw ValidationError("layout: at least one site required");
  strides_.assign(dims_.size(), 1);
  for (std::size_t i = dims_.size(); i-- > 0;) {
    if (dims_[i] < 2) throw ValidationError("layout: site dimension must be >= 2");
    strides_[i] = total_;
    total_ *= static_cast<std::size_t>(dims_[i]);
    if (total_ > (std::size_t{1} << 40)) throw CapacityError("layout: total dimension overflows");
  }
}

SystemLayout SystemLayout::qubits(int n) {
  if (n < 1) throw ValidationError("layout: qubit count must be >= 1");
  return SystemLayout(std::vector<int>(static_cast<std::size_t>(n), 2));
}

std::size_t SystemLayout::dim_of(const SiteSet& sites) const {
  std::size_t d = 1;
  for (int s : sites) d *= static_cast<std::size_t>(dim(s));
  return d;
}

SystemLayout SystemLayout::restricted_to(const SiteSet& keep) const {
  std::vector<int> dims;
  for (int s : keep) dims.push_back(dim(s));
  return SystemLayout(std::move(dims));
}

// ---------------------------------------------------------------------------
// DensityMatrix

DensityMatrix::DensityMatrix(ComplexMatrix matrix, SystemLayout layout, NoCheck)
    : matrix_(std::move(matrix)), layout_(std::move(layout)) {
  if (matrix_.rows() != matrix_.cols() || static_cast<std::size_t>(matrix_.rows()) != layout_.total_dim()) {
    throw ValidationError("density matrix: shape " + std::to_string(matrix_.rows()) + "x" +
                          std::to_string(matrix_.cols()) + " does not match layout dimension " +
                          std::to_string(layout_.total_dim()));
  }
}

DensityMatrix::DensityMatrix(ComplexMatrix matrix, SystemLayout layout, double tol)
    : DensityMatrix(std::move(matrix), std::move(layout), NoCheck{}) {
  require_hermitian(matrix_, tol, "density matrix");
  matrix_ = hermitian_part(matrix_);
  const double tr = matrix_.trace().real();
  if (std::abs(tr - 1.0) > tol) throw ValidationError("density matrix: trace " + std::to_string(tr) + " is not 1");
  const double lmin = min_eigenvalue(matrix_);
  if (lmin < -tol) throw ValidationError("density matrix: negative eigenvalue " + std::to_string(lmin));
}

DensityMatrix DensityMatrix::from_pure(const ComplexVector& psi, SystemLayout layout) {
  if (std::abs(psi.norm() - 1.0) > 1e-10) throw ValidationError("pure state: vector is not normalized");
  return DensityMatrix(projector(psi), std::move(layout), NoCheck{});
}

DensityMatrix DensityMatrix::unchecked(ComplexMatrix matrix, SystemLayout layout) {
  return DensityMatrix(std::move(matrix), std::move(layout), NoCheck{});
}

// ---------------------------------------------------------------------------
// Bipartition

Bipartition::Bipartition(SiteSet a, SiteSet b) : a_(std::move(a)), b_(std::move(b)) {
  std::sort(a_.begin(), a_.end());
  std::sort(b_.begin(), b_.end());
  if (a_.empty() || b_.empty()) throw ValidationError("bipartition: both sides must be nonempty");
  SiteSet both;
  std::set_intersection(a_.begin(), a_.end(), b_.begin(), b_.end(), std::back_inserter(both));
  if (!both.empty()) throw ValidationError("bipartition: sides overlap");
  if (std::adjacent_find(a_.begin(), a_.end()) != a_.end() || std::adjacent_find(b_.begin(), b_.end()) != b_.end())
    throw ValidationError("bipartition: repeated site index");
  if (a_.front() < 0 || b_.front() < 0) throw ValidationError("bipartition: negative site index");
}

Bipartition Bipartition::from_mask(std::uint64_t a_mask, int n_sites) {
  if (n_sites < 2 || n_sites > 64) throw ValidationError("bipartition: need 2..64 sites");
  SiteSet a, b;
  for (int s = 0; s < n_sites; ++s) ((a_mask >> s) & 1u ? a : b).push_back(s);
  if (n_sites < 64 && (a_mask >> n_sites) != 0) throw ValidationError("bipartition: mask names sites beyond the layout");
  return Bipartition(std::move(a), std::move(b));
}

std::uint64_t Bipartition::a_mask() const noexcept {
  std::uint64_t m = 0;
  for (int s : a_) m |= std::uint64_t{1} << s;
  return m;
}

void Bipartition::check_covers(const SystemLayout& layout) const {
  if (a_.back() >= layout.sites() || b_.back() >= layout.sites())
    throw ValidationError("bipartition: site index beyond layout");
  if (a_.size() + b_.size() != static_cast<std::size_t>(layout.sites()))
    throw ValidationError("bipartition: sides do not cover every site");
}

std::vector<Bipartition> all_bipartitions(int n_sites) {
  if (n_sites < 2) throw ValidationError("all_bipartitions: need at least two sites");
  std::vector<Bipartition> cuts;
  const std::uint64_t full = (std::uint64_t{1} << n_sites) - 1;
  for (std::uint64_t mask = 1; mask < full; mask += 2) cuts.push_back(Bipartition::from_mask(mask, n_sites));
  return cuts;
}

// ---------------------------------------------------------------------------
// Structural operations

DensityMatrix partial_trace(const DensityMatrix& rho, const SiteSet& keep_in) {
  const SystemLayout& layout = rho.layout();
  if (keep_in.empty()) throw ValidationError("partial_trace: keep set is empty");
  const SiteSet keep = normalized_sites(keep_in, layout.sites(), "partial_trace");
  const SiteSet traced = complement(keep, layout.sites());
  const auto kept_off = offsets(layout, keep);
  const auto traced_off = offsets(layout, traced);
  const auto dk = static_cast<Eigen::Index>(kept_off.size());
  const ComplexMatrix& m = rho.matrix();
  ComplexMatrix out = ComplexMatrix::Zero(dk, dk);
  for (Eigen::Index j = 0; j < dk; ++j) {
    for (Eigen::Index i = 0; i < dk; ++i) {
      Complex acc = 0.0;
      for (std::size_t t : traced_off)
        acc += m(static_cast<Eigen::Index>(kept_off[static_cast<std::size_t>(i)] + t),
                 static_cast<Eigen::Index>(kept_off[static_cast<std::size_t>(j)] + t));
      out(i, j) = acc;
    }
  }
  return DensityMatrix::unchecked(std::move(out), layout.restricted_to(keep));
}

ComplexMatrix partial_transpose(const ComplexMatrix& m, const SystemLayout& layout, const SiteSet& sites_in) {
  const SiteSet sites = normalized_sites(sites_in, layout.sites(), "partial_transpose");
  const std::size_t n = layout.total_dim();
  if (static_cast<std::size_t>(m.rows()) != n || m.rows() != m.cols())
    throw ValidationError("partial_transpose: matrix shape does not match layout");
  // Split every index into its transposed part and the rest.
  std::vector<std::size_t> part(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (int s : sites)
      part[i] += ((i / layout.stride(s)) % static_cast<std::size_t>(layout.dim(s))) * layout.stride(s);
  ComplexMatrix out(m.rows(), m.cols());
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t rest_j = j - part[j];
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t rest_i = i - part[i];
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          m(static_cast<Eigen::Index>(rest_i + part[j]), static_cast<Eigen::Index>(rest_j + part[i]));
    }
  }
  return out;
}

ComplexMatrix partial_transpose(const DensityMatrix& rho, const Bipartition& cut) {
  cut.check_covers(rho.layout());
  return partial_transpose(rho.matrix(), rho.layout(), cut.b());
}

DensityMatrix dephase_site(const DensityMatrix& rho, int site) {
  const SystemLayout& layout = rho.layout();
  if (site < 0 || site >= layout.sites()) throw ValidationError("dephase_site: site out of range");
  const std::size_t stride = layout.stride(site);
  const auto d = static_cast<std::size_t>(layout.dim(site));
  ComplexMatrix out = rho.matrix();
  for (Eigen::Index j = 0; j < out.cols(); ++j)
    for (Eigen::Index i = 0; i < out.rows(); ++i)
      if ((static_cast<std::size_t>(i) / stride) % d != (static_cast<std::size_t>(j) / stride) % d) out(i, j) = 0.0;
  return DensityMatrix::unchecked(std::move(out), layout);
}

DensityMatrix permute_sites(const DensityMatrix& rho, const std::vector<int>& order) {
  const SystemLayout& old_layout = rho.layout();
  SiteSet sorted = normalized_sites(order, old_layout.sites(), "permute_sites");
  if (static_cast<int>(sorted.size()) != old_layout.sites())
    throw ValidationError("permute_sites: order must list every site once");
  std::vector<int> new_dims;
  for (int s : order) new_dims.push_back(old_layout.dim(s));
  SystemLayout new_layout(std::move(new_dims));
  // offsets() enumerates in the new order with old strides: entry i' is the
  // old index of new basis state i'.
  const auto map = offsets(old_layout, SiteSet(order.begin(), order.end()));
  const ComplexMatrix& m = rho.matrix();
  ComplexMatrix out(m.rows(), m.cols());
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      out(i, j) = m(static_cast<Eigen::Index>(map[static_cast<std::size_t>(i)]),
                    static_cast<Eigen::Index>(map[static_cast<std::size_t>(j)]));
  return DensityMatrix::unchecked(std::move(out), std::move(new_layout));
}

DensityMatrix regroup(const DensityMatrix& rho, const std::vector<SiteSet>& groups) {
  std::vector<int> order;
  std::vector<int> fused;
  for (const auto& g : groups) {
    if (g.empty()) throw ValidationError("regroup: empty group");
    int d = 1;
    for (int s : g) {
      if (s < 0 || s >= rho.sites()) throw ValidationError("regroup: site out of range");
      order.push_back(s);
      d *= rho.layout().dim(s);
    }
    fused.push_back(d);
  }
  SiteSet check = order;
  std::sort(check.begin(), check.end());
  if (static_cast<int>(check.size()) != rho.sites() || std::adjacent_find(check.begin(), check.end()) != check.end())
    throw ValidationError("regroup: groups must partition the sites");
  DensityMatrix permuted = permute_sites(rho, order);
  return DensityMatrix::unchecked(permuted.matrix(), SystemLayout(std::move(fused)));
}

QubitRefinement split_into_qubits(const DensityMatrix& rho) {
  std::vector<int> dims;
  std::vector<int> owner;
  for (int s = 0; s < rho.sites(); ++s) {
    int d = rho.layout().dim(s);
    if ((d & (d - 1)) == 0) {
      for (; d > 1; d >>= 1) {
        dims.push_back(2);
        owner.push_back(s);
      }
    } else {
      dims.push_back(d);
      owner.push_back(s);
    }
  }
  return {DensityMatrix::unchecked(rho.matrix(), SystemLayout(std::move(dims))), std::move(owner)};
}

DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b) {
  std::vector<int> dims = a.layout().dims();
  dims.insert(dims.end(), b.layout().dims().begin(), b.layout().dims().end());
  SystemLayout layout(std::move(dims));
  check_dim_budget(layout.total_dim(), "tensor_product");
  return DensityMatrix::unchecked(tensor_product(a.matrix(), b.matrix()), std::move(layout));
}

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim()) throw ValidationError("trace_distance: dimension mismatch");
  return trace_norm(rho.matrix() - sigma.matrix());
}

// ---------------------------------------------------------------------------
// State families

DensityMatrix maximally_mixed(const SystemLayout& layout) {
  check_dim_budget(layout.total_dim(), "maximally_mixed");
  const auto d = static_cast<Eigen::Index>(layout.total_dim());
  return DensityMatrix::unchecked(ComplexMatrix::Identity(d, d) / static_cast<double>(d), layout);
}

DensityMatrix bell_pair() { return werner(1.0); }

DensityMatrix werner(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw ValidationError("werner: p must lie in [0, 1]");
  ComplexVector phi = (basis_ket(4, 0) + basis_ket(4, 3)) / std::sqrt(2.0);
  ComplexMatrix m = p * projector(phi) + (1.0 - p) * ComplexMatrix::Identity(4, 4) / 4.0;
  return DensityMatrix::unchecked(std::move(m), SystemLayout::qubits(2));
}

DensityMatrix bell_pairs(int pairs) {
  if (pairs < 1) throw ValidationError("bell_pairs: need at least one pair");
  DensityMatrix out = bell_pair();
  for (int i = 1; i < pairs; ++i) out = tensor_product(out, bell_pair());
  return out;
}

ComplexVector w_vector(int n) {
  if (n < 1) throw ValidationError("w_state: n must be >= 1");
  if (n > 30) throw CapacityError("w_state: n exceeds 30 qubits");
  const std::size_t dim = std::size_t{1} << n;
  check_dim_budget(dim, "w_state");
  ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(dim));
  const double amp = 1.0 / std::sqrt(static_cast<double>(n));
  // qubit k (0-based, site order) excited: bit n-1-k of the index
  for (int k = 0; k < n; ++k) v(static_cast<Eigen::Index>(std::size_t{1} << (n - 1 - k))) = amp;
  return v;
}

DensityMatrix w_state(int n) { return DensityMatrix::from_pure(w_vector(n), SystemLayout::qubits(n)); }

DensityMatrix w_reduced(int n, int k) {
  if (n < 1 || k < 1) throw ValidationError("w_reduced: need 1 <= k <= n");
  if (k > n) throw ValidationError("w_reduced: k = " + std::to_string(k) + " exceeds n = " + std::to_string(n));
  const ComplexVector wk = w_vector(k);
  const std::size_t dim = std::size_t{1} << k;
  ComplexMatrix m = (static_cast<double>(n - k) / n) * projector(basis_ket(dim, 0)) +
                    (static_cast<double>(k) / n) * projector(wk);
  return DensityMatrix::unchecked(std::move(m), SystemLayout::qubits(k));
}

DensityMatrix w_reduced_compact(int n, int k, int j) {
  if (!(1 <= j && j < k && k <= n)) throw ValidationError("w_reduced_compact: need 1 <= j < k <= n");
  const double nn = n;
  ComplexMatrix m = ComplexMatrix::Zero(4, 4);
  m(0, 0) = 1.0 - k / nn;
  m(1, 1) = j / nn;
  m(2, 2) = (k - j) / nn;
  m(1, 2) = m(2, 1) = std::sqrt(static_cast<double>(j) * (k - j)) / nn;
  return DensityMatrix::unchecked(std::move(m), SystemLayout::qubits(2));
}

DensityMatrix cluster_state(const Graph& graph) {
  const int n = graph.vertex_count();
  if (n < 1) throw ValidationError("cluster_state: graph is empty");
  if (n > 30) throw CapacityError("cluster_state: more than 30 qubits");
  const std::size_t dim = std::size_t{1} << n;
  check_dim_budget(dim, "cluster_state");
  ComplexVector v(static_cast<Eigen::Index>(dim));
  const double amp = std::pow(2.0, -0.5 * n);
  for (std::size_t x = 0; x < dim; ++x) {
    int parity = 0;
    for (const auto& [a, b] : graph.edges())
      parity ^= static_cast<int>(((x >> (n - 1 - a)) & 1u) & ((x >> (n - 1 - b)) & 1u));
    v(static_cast<Eigen::Index>(x)) = parity ? -amp : amp;
  }
  return DensityMatrix::from_pure(v, SystemLayout::qubits(n));
}

DensityMatrix grid_pair_state(int rows, int cols, double p) {
  const Graph g = grid_graph(rows, cols);
  if (g.vertex_count() < 2) throw ValidationError("grid_pair_state: grid needs at least two vertices");
  const int qubits = 2 * static_cast<int>(g.edges().size());
  if (qubits > kMaxGridQubits) {
    throw CapacityError("grid_pair_state: " + std::to_string(qubits) + " qubits exceeds the dense limit of " +
                        std::to_string(kMaxGridQubits) + " qubits");
  }
  DensityMatrix pairs = werner(p);
  for (std::size_t e = 1; e < g.edges().size(); ++e) pairs = tensor_product(pairs, werner(p));
  // Edge e holds qubits 2e (first endpoint) and 2e+1 (second endpoint).
  std::vector<SiteSet> groups(static_cast<std::size_t>(g.vertex_count()));
  for (std::size_t e = 0; e < g.edges().size(); ++e) {
    groups[static_cast<std::size_t>(g.edges()[e].first)].push_back(static_cast<int>(2 * e));
    groups[static_cast<std::size_t>(g.edges()[e].second)].push_back(static_cast<int>(2 * e + 1));
  }
  return regroup(pairs, groups);
}

DensityMatrix phase_cat(int n, double phi) {
  if (n < 1) throw ValidationError("phase_cat: n must be >= 1");
  if (n > 30) throw CapacityError("phase_cat: more than 30 qubits");
  const std::size_t dim = std::size_t{1} << n;
  check_dim_budget(dim, "phase_cat");
  ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(dim));
  v(0) = 1.0 / std::sqrt(2.0);
  v(static_cast<Eigen::Index>(dim - 1)) = std::polar(1.0 / std::sqrt(2.0), phi);
  return DensityMatrix::from_pure(v, SystemLayout::qubits(n));
}

}  // namespace kalaik
