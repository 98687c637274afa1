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

#include "kalaik/entanglement.hpp"

#include "kalaik/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace kalaik {

NegativityResult negativity(const DensityMatrix& rho, const Bipartition& cut) {
  const RealVector spec = hermitian_eigenvalues(partial_transpose(rho, cut));
  NegativityResult out{0.0, 0.0, {}, cut};
  for (Eigen::Index i = 0; i < spec.size(); ++i) {
    if (spec(i) < 0.0) {
      out.negative_eigenvalues.push_back(spec(i));
      out.negativity -= spec(i);
    }
  }
  out.trace_norm_form = 0.5 * (spec.cwiseAbs().sum() - 1.0);
  return out;
}

double min_partial_transpose_eigenvalue(const DensityMatrix& rho, const Bipartition& cut) {
  return min_eigenvalue(partial_transpose(rho, cut));
}

bool is_ppt(const DensityMatrix& rho, const Bipartition& cut, double tol) {
  return min_partial_transpose_eigenvalue(rho, cut) >= -tol;
}

namespace {

void check_w_range(int n, int k, int j, const char* what) {
  if (!(1 <= j && j < k && k <= n)) {
    throw ValidationError(std::string(what) + ": need 1 <= j < k <= n, got (n,k,j) = (" + std::to_string(n) + "," +
                          std::to_string(k) + "," + std::to_string(j) + ")");
  }
}

}  // namespace

double w_negativity(int n, int k, int j) {
  check_w_range(n, k, j, "w_negativity");
  const double half_gap = static_cast<double>(n - k) / (2.0 * n);
  const double coupling = static_cast<double>(j) * (k - j) / (static_cast<double>(n) * n);
  return std::sqrt(half_gap * half_gap + coupling) - half_gap;
}

double w_negativity_printed(int n, int k, int j) {
  check_w_range(n, k, j, "w_negativity_printed");
  const double nn = n;
  return 0.5 * (k / nn + std::sqrt(4.0 * j * (k - j) / nn + (n - k) * (n - k) / (nn * nn)) - 1.0);
}

WMinCut w_negativity_min_cut(int n, int k) {
  if (!(2 <= k && k <= n)) throw ValidationError("w_negativity_min_cut: need 2 <= k <= n");
  WMinCut best{1, w_negativity(n, k, 1)};
  for (int j = 2; j <= k / 2; ++j) {
    const double v = w_negativity(n, k, j);
    if (v < best.negativity) best = {j, v};
  }
  return best;
}

double neg_distance_lb(double neg, std::size_t dim_a, std::size_t dim_b) {
  if (!(neg >= 0.0)) throw ValidationError("neg_distance_lb: negativity must be >= 0");
  if (dim_a < 1 || dim_b < 1) throw ValidationError("neg_distance_lb: dimensions must be positive");
  return neg / static_cast<double>(std::min(dim_a, dim_b));
}

std::string_view to_string(CertificateKind kind) {
  switch (kind) {
    case CertificateKind::block_diagonal: return "block-diagonal";
    case CertificateKind::ppt_low_dim: return "ppt-two-qubit";
    case CertificateKind::product: return "product";
  }
  return "unknown";
}

std::optional<SeparabilityCertificate> dephasing_separability_certificate(const DensityMatrix& rho, int site,
                                                                          double tol) {
  if (site < 0 || site >= rho.sites()) throw ValidationError("dephasing certificate: site out of range");
  if (rho.sites() < 2) return std::nullopt;
  double residual = max_abs_diff(dephase_site(rho, site).matrix(), rho.matrix());
  if (residual > tol && rho.layout().dim(site) == 2) {
    // Rotate the X and Y eigenbases onto the computational one.
    const double r = 1.0 / std::sqrt(2.0);
    const Complex i1(0.0, 1.0);
    ComplexMatrix hx(2, 2), hy(2, 2);
    hx << r, r, r, -r;
    hy << r, -i1 * r, r, i1 * r;
    for (const ComplexMatrix* u : {&hx, &hy}) {
      const auto right = static_cast<Eigen::Index>(rho.layout().stride(site));
      const auto left = static_cast<Eigen::Index>(rho.layout().total_dim()) / (2 * right);
      const ComplexMatrix full = tensor_product(tensor_product(ComplexMatrix::Identity(left, left), *u),
                                                ComplexMatrix::Identity(right, right));
      const DensityMatrix rotated = DensityMatrix::unchecked(full * rho.matrix() * full.adjoint(), rho.layout());
      residual = std::min(residual, max_abs_diff(dephase_site(rotated, site).matrix(), rotated.matrix()));
    }
  }
  if (residual > tol) return std::nullopt;
  SiteSet rest;
  for (int s = 0; s < rho.sites(); ++s)
    if (s != site) rest.push_back(s);
  return SeparabilityCertificate{CertificateKind::block_diagonal, Bipartition({site}, std::move(rest)), residual};
}

std::optional<SeparabilityCertificate> product_certificate(const DensityMatrix& rho, const Bipartition& cut,
                                                           double tol) {
  cut.check_covers(rho.layout());
  const DensityMatrix ra = partial_trace(rho, cut.a());
  const DensityMatrix rb = partial_trace(rho, cut.b());
  // rho_A (x) rho_B lives in the (A, B) site order; compare after reordering rho.
  std::vector<int> order = cut.a();
  order.insert(order.end(), cut.b().begin(), cut.b().end());
  const DensityMatrix reordered = permute_sites(rho, order);
  const double residual = max_abs_diff(tensor_product(ra.matrix(), rb.matrix()), reordered.matrix());
  if (residual > tol) return std::nullopt;
  return SeparabilityCertificate{CertificateKind::product, cut, residual};
}

bool ppt_is_exact(std::size_t dim_a, std::size_t dim_b) {
  const auto lo = std::min(dim_a, dim_b);
  const auto hi = std::max(dim_a, dim_b);
  return lo == 2 && hi <= 3;
}

std::optional<SeparabilityCertificate> ppt_low_dim_certificate(const DensityMatrix& rho, const Bipartition& cut,
                                                               double tol) {
  cut.check_covers(rho.layout());
  if (!ppt_is_exact(rho.layout().dim_of(cut.a()), rho.layout().dim_of(cut.b()))) return std::nullopt;
  const double lmin = min_partial_transpose_eigenvalue(rho, cut);
  if (lmin < -tol) return std::nullopt;
  return SeparabilityCertificate{CertificateKind::ppt_low_dim, cut, std::max(0.0, -lmin)};
}

}  // namespace kalaik
