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

#include <Eigen/Dense>

#include <complex>
#include <cstddef>

namespace kalaik {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Default absolute tolerance for Hermiticity checks on inputs.
inline constexpr double kHermitianTol = 1e-10;

/// Eigen-decomposition of a Hermitian matrix. Eigenvalues are sorted
/// descending and `vectors` holds the matching orthonormal columns.
struct Spectrum {
  RealVector values;
  ComplexMatrix vectors;
};

/// Largest entry of |H - H^dagger|.
double hermiticity_defect(const ComplexMatrix& h);

/// Throws ValidationError unless `h` is square and Hermitian within `tol`.
void require_hermitian(const ComplexMatrix& h, double tol, const char* what);

/// (H + H^dagger) / 2.
ComplexMatrix hermitian_part(const ComplexMatrix& h);

/// Full spectrum via Householder tridiagonalization and implicit QL.
Spectrum hermitian_eig(const ComplexMatrix& h, double tol = kHermitianTol);

/// Eigenvalues only, descending. Cheaper than hermitian_eig when the
/// eigenvectors are not needed.
RealVector hermitian_eigenvalues(const ComplexMatrix& h,
                                 double tol = kHermitianTol);

/// Cyclic Jacobi eigensolver. Sweeps until the off-diagonal Frobenius norm
/// drops below 1e-13 * ||H||_F. Kept as an independent route to the spectrum.
Spectrum jacobi_eig(const ComplexMatrix& h, double tol = kHermitianTol);

double min_eigenvalue(const ComplexMatrix& h, double tol = kHermitianTol);

/// ||X||_tr = (1/2) sum |lambda_i|.
double trace_norm(const ComplexMatrix& x, double tol = kHermitianTol);

/// Nearest PSD matrix in Frobenius norm (negative eigenvalues clipped).
ComplexMatrix psd_project(const ComplexMatrix& h, double tol = kHermitianTol);

/// Kronecker product, A's indices major.
ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b);

/// Reassemble V diag(values) V^dagger.
ComplexMatrix reconstruct(const RealVector& values, const ComplexMatrix& vectors);

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

inline bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b,
                         double abs_tol) {
  return a.rows() == b.rows() && a.cols() == b.cols() &&
         max_abs_diff(a, b) <= abs_tol;
}

}  // namespace kalaik
