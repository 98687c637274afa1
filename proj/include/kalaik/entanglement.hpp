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

#include <optional>
#include <string_view>
#include <vector>

namespace kalaik {

struct NegativityResult {
  /// Absolute sum of the negative eigenvalues of rho^Gamma.
  double negativity = 0.0;
  /// (||rho^Gamma||_1 - 1)/2, computed from the same spectrum.
  double trace_norm_form = 0.0;
  std::vector<double> negative_eigenvalues;
  Bipartition cut;
};

NegativityResult negativity(const DensityMatrix& rho, const Bipartition& cut);

/// Smallest eigenvalue of rho^Gamma across `cut`.
double min_partial_transpose_eigenvalue(const DensityMatrix& rho, const Bipartition& cut);

bool is_ppt(const DensityMatrix& rho, const Bipartition& cut, double tol = 1e-10);

/// Negativity of the W-state marginal on k of n qubits, cut into j | k-j.
/// From the spectrum of rho_k^Gamma: the only negative eigenvalue is
/// (n-k)/2n - sqrt(((n-k)/2n)^2 + j(k-j)/n^2).
double w_negativity(int n, int k, int j);

/// Variant closed form with 4j(k-j)/n under the root:
/// (1/2)(k/n + sqrt(4j(k-j)/n + (n-k)^2/n^2) - 1). Disagrees with the
/// spectrum above (e.g. at (3,2,1)); kept for regression comparison only.
double w_negativity_printed(int n, int k, int j);

struct WMinCut {
  int argmin_j = 1;
  double negativity = 0.0;
};

/// Minimum of w_negativity(n, k, j) over 1 <= j <= floor(k/2).
WMinCut w_negativity_min_cut(int n, int k);

/// Certified lower bound on min over separable sigma of ||rho - sigma||_tr:
/// negativity / min(dim_a, dim_b).
double neg_distance_lb(double neg, std::size_t dim_a, std::size_t dim_b);

enum class CertificateKind {
  block_diagonal,  ///< rho is block-diagonal in one site's basis
  ppt_low_dim,     ///< PPT on a 2x2 or 2x3 cut
  product,         ///< rho = rho_A (x) rho_B
};

std::string_view to_string(CertificateKind kind);

/// Proof that rho is separable across `cut`, with the residual that was
/// compared against the tolerance.
struct SeparabilityCertificate {
  CertificateKind kind;
  Bipartition cut;
  double residual = 0.0;
};

/// Issued iff rho is invariant within tol under dephasing `site` in its
/// computational basis or, for a qubit, in the X or Y basis. Such a state is
/// a mixture of |e_i><e_i| (x) rho_i, hence separable across ({site}, rest).
std::optional<SeparabilityCertificate> dephasing_separability_certificate(const DensityMatrix& rho, int site,
                                                                          double tol = 1e-10);

std::optional<SeparabilityCertificate> product_certificate(const DensityMatrix& rho, const Bipartition& cut,
                                                           double tol = 1e-10);

/// PPT implies separable when the cut is 2x2 or 2x3.
std::optional<SeparabilityCertificate> ppt_low_dim_certificate(const DensityMatrix& rho, const Bipartition& cut,
                                                               double tol = 1e-10);

/// True when PPT is equivalent to separability across `cut`.
bool ppt_is_exact(std::size_t dim_a, std::size_t dim_b);

}  // namespace kalaik
