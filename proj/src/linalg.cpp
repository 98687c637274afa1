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

#include "kalaik/linalg.hpp"

#include "kalaik/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

namespace kalaik {

namespace {

Spectrum sorted_descending(const RealVector& values, const ComplexMatrix& vectors) {
  const auto n = values.size();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index a, Eigen::Index b) { return values(a) > values(b); });
  Spectrum out{RealVector(n), ComplexMatrix(vectors.rows(), n)};
  for (Eigen::Index i = 0; i < n; ++i) {
    out.values(i) = values(order[static_cast<std::size_t>(i)]);
    out.vectors.col(i) = vectors.col(order[static_cast<std::size_t>(i)]);
  }
  return out;
}

}  // namespace

double hermiticity_defect(const ComplexMatrix& h) {
  if (h.rows() != h.cols()) return INFINITY;
  if (h.size() == 0) return 0.0;
  return (h - h.adjoint()).cwiseAbs().maxCoeff();
}

void require_hermitian(const ComplexMatrix& h, double tol, const char* what) {
  if (h.rows() != h.cols()) {
    throw ValidationError(std::string(what) + ": matrix is not square (" +
                          std::to_string(h.rows()) + "x" + std::to_string(h.cols()) + ")");
  }
  const double defect = hermiticity_defect(h);
  if (!(defect <= tol)) {
    throw ValidationError(std::string(what) + ": matrix is not Hermitian (max |H - H^dagger| = " +
                          std::to_string(defect) + ")");
  }
}

ComplexMatrix hermitian_part(const ComplexMatrix& h) {
  return 0.5 * (h + h.adjoint());
}

namespace {

bool is_real(const ComplexMatrix& h) { return h.imag().cwiseAbs().maxCoeff() == 0.0; }

}  // namespace

// Real symmetric input takes the real solver, which is several times faster.
Spectrum hermitian_eig(const ComplexMatrix& h, double tol) {
  require_hermitian(h, tol, "hermitian_eig");
  if (h.size() == 0) return {};
  const ComplexMatrix sym = hermitian_part(h);
  // Eigen reports ascending order; reverse in place.
  if (is_real(sym)) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym.real());
    return Spectrum{solver.eigenvalues().reverse(), solver.eigenvectors().rowwise().reverse().cast<Complex>()};
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
  return Spectrum{solver.eigenvalues().reverse(), solver.eigenvectors().rowwise().reverse()};
}

RealVector hermitian_eigenvalues(const ComplexMatrix& h, double tol) {
  require_hermitian(h, tol, "hermitian_eigenvalues");
  if (h.size() == 0) return {};
  const ComplexMatrix sym = hermitian_part(h);
  if (is_real(sym)) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym.real(), Eigen::EigenvaluesOnly);
    return solver.eigenvalues().reverse();
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().reverse();
}

Spectrum jacobi_eig(const ComplexMatrix& h, double tol) {
  require_hermitian(h, tol, "jacobi_eig");
  const Eigen::Index n = h.rows();
  ComplexMatrix a = hermitian_part(h);
  ComplexMatrix v = ComplexMatrix::Identity(n, n);
  const double scale = a.norm();
  const double threshold = 1e-13 * scale;

  auto off_norm = [&] {
    double s = 0.0;
    for (Eigen::Index j = 0; j < n; ++j)
      for (Eigen::Index i = 0; i < n; ++i)
        if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
  };

  constexpr int kMaxSweeps = 100;
  for (int sweep = 0; sweep < kMaxSweeps && off_norm() > threshold; ++sweep) {
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag == 0.0) continue;
        const Complex phase = std::conj(apq) / mag;  // e^{-i arg a_pq}
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double theta = (aqq - app) / (2.0 * mag);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        // J = diag(1, phase) * [[c, s], [-s, c]]
        const Complex jpp = c;
        const Complex jpq = s;
        const Complex jqp = -s * phase;
        const Complex jqq = c * phase;

        for (Eigen::Index k = 0; k < n; ++k) {
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = akp * jpp + akq * jqp;
          a(k, q) = akp * jpq + akq * jqq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const Complex apk = a(p, k);
          const Complex aqk = a(q, k);
          a(p, k) = std::conj(jpp) * apk + std::conj(jqp) * aqk;
          a(q, k) = std::conj(jpq) * apk + std::conj(jqq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        for (Eigen::Index k = 0; k < n; ++k) {
          const Complex vkp = v(k, p);
          const Complex vkq = v(k, q);
          v(k, p) = vkp * jpp + vkq * jqp;
          v(k, q) = vkp * jpq + vkq * jqq;
        }
      }
    }
  }
  return sorted_descending(a.diagonal().real(), v);
}

double min_eigenvalue(const ComplexMatrix& h, double tol) {
  const RealVector values = hermitian_eigenvalues(h, tol);
  return values.size() == 0 ? 0.0 : values(values.size() - 1);
}

double trace_norm(const ComplexMatrix& x, double tol) {
  return 0.5 * hermitian_eigenvalues(x, tol).cwiseAbs().sum();
}

ComplexMatrix psd_project(const ComplexMatrix& h, double tol) {
  const Spectrum spec = hermitian_eig(h, tol);
  return reconstruct(spec.values.cwiseMax(0.0), spec.vectors);
}

ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

ComplexMatrix reconstruct(const RealVector& values, const ComplexMatrix& vectors) {
  return vectors * values.cast<Complex>().asDiagonal() * vectors.adjoint();
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return INFINITY;
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace kalaik
