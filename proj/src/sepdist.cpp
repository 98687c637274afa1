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

#include "kalaik/sepdist.hpp"

#include "kalaik/entanglement.hpp"
#include "kalaik/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <vector>

namespace kalaik {

void SolverConfig::validate() const {
  if (max_iterations < 0) throw ValidationError("solver config: max_iterations must be >= 0");
  if (!(target_gap > 0.0)) throw ValidationError("solver config: target_gap must be > 0");
  if (!(step_size > 0.0)) throw ValidationError("solver config: step_size must be > 0");
  if (dykstra_rounds < 1) throw ValidationError("solver config: dykstra_rounds must be >= 1");
  if (stall_iterations < 1) throw ValidationError("solver config: stall_iterations must be >= 1");
  if (refine_cuts < 1) throw ValidationError("solver config: refine_cuts must be >= 1");
}

namespace {

using Matrix2c = Eigen::Matrix2cd;
using Vector2c = Eigen::Vector2cd;

struct TopEigen {
  double value;
  Vector2c vector;
};

TopEigen top_eigen(const Matrix2c& m) {
  Eigen::SelfAdjointEigenSolver<Matrix2c> es(0.5 * (m + m.adjoint()));
  return {es.eigenvalues()(1), es.eigenvectors().col(1)};
}

// <a|P|a> on the second qubit (a on site 0), or <b|P|b> on the first.
Matrix2c contract_first(const ComplexMatrix& p, const Vector2c& a) {
  Matrix2c out = Matrix2c::Zero();
  for (int b1 = 0; b1 < 2; ++b1)
    for (int b2 = 0; b2 < 2; ++b2)
      for (int a1 = 0; a1 < 2; ++a1)
        for (int a2 = 0; a2 < 2; ++a2) out(b1, b2) += std::conj(a(a1)) * p(a1 * 2 + b1, a2 * 2 + b2) * a(a2);
  return out;
}

Matrix2c contract_second(const ComplexMatrix& p, const Vector2c& b) {
  Matrix2c out = Matrix2c::Zero();
  for (int a1 = 0; a1 < 2; ++a1)
    for (int a2 = 0; a2 < 2; ++a2)
      for (int b1 = 0; b1 < 2; ++b1)
        for (int b2 = 0; b2 < 2; ++b2) out(a1, a2) += std::conj(b(b1)) * p(a1 * 2 + b1, a2 * 2 + b2) * b(b2);
  return out;
}

double refine_product_overlap(const ComplexMatrix& p, Vector2c a) {
  double value = -INFINITY;
  for (int it = 0; it < 200; ++it) {
    const TopEigen b = top_eigen(contract_first(p, a));
    const TopEigen a_next = top_eigen(contract_second(p, b.vector));
    a = a_next.vector;
    const double improved = std::max(b.value, a_next.value);
    if (improved <= value + 1e-15) {
      value = std::max(value, improved);
      break;
    }
    value = improved;
  }
  return value;
}

struct Problem {
  const DensityMatrix& rho;
  SiteSet b_sites;
  Eigen::Index dim;

  ComplexMatrix gamma(const ComplexMatrix& m) const { return partial_transpose(m, rho.layout(), b_sites); }
  double objective(const ComplexMatrix& sigma) const { return trace_norm(rho.matrix() - sigma); }
};

// Rescale to unit trace and mix with I/D until sigma and sigma^Gamma are PSD.
ComplexMatrix make_feasible(const Problem& pr, ComplexMatrix sigma) {
  sigma = hermitian_part(sigma);
  const double tr = sigma.trace().real();
  if (tr > 0.0) sigma /= tr;
  const double inv_d = 1.0 / static_cast<double>(pr.dim);
  const double lmin = std::min(min_eigenvalue(sigma), min_eigenvalue(pr.gamma(sigma)));
  if (lmin < 0.0) {
    const double shift = -lmin * (1.0 + 1e-9) + 1e-15;
    const double t = std::min(1.0, shift / (inv_d + shift));
    sigma = (1.0 - t) * sigma + t * inv_d * ComplexMatrix::Identity(pr.dim, pr.dim);
  }
  return sigma;
}

// Smallest t with ((1-t) rho + t ref)^Gamma >= 0; ref must be PPT. With
// R = ref^Gamma positive definite this is a generalized eigenvalue problem;
// otherwise bisect, using that the minimum eigenvalue is concave in t.
ComplexMatrix mix_towards(const Problem& pr, const ComplexMatrix& ref) {
  const ComplexMatrix& rho = pr.rho.matrix();
  const ComplexMatrix rho_g = hermitian_part(pr.gamma(rho));
  const ComplexMatrix ref_g = hermitian_part(pr.gamma(ref));
  double t = 1.0;
  const Eigen::LLT<ComplexMatrix> llt(ref_g);
  const double min_pivot = llt.info() == Eigen::Success ? llt.matrixL().toDenseMatrix().diagonal().real().minCoeff() : 0.0;
  if (min_pivot > 1e-6) {
    const ComplexMatrix l_inv = llt.matrixL().solve(ComplexMatrix::Identity(pr.dim, pr.dim));
    const double lambda = min_eigenvalue(hermitian_part(l_inv * rho_g * l_inv.adjoint()), 1e-8);
    const double s = std::max(0.0, -lambda);
    t = std::min(1.0, s / (1.0 + s));
  } else {
    double lo = 0.0;
    for (int it = 0; it < 40; ++it) {
      const double mid = 0.5 * (lo + t);
      (min_eigenvalue((1.0 - mid) * rho_g + mid * ref_g) >= 0.0 ? t : lo) = mid;
    }
  }
  return make_feasible(pr, (1.0 - t) * rho + t * ref);
}

ComplexMatrix dykstra_project(const Problem& pr, ComplexMatrix x, int rounds) {
  const ComplexMatrix id = ComplexMatrix::Identity(pr.dim, pr.dim);
  ComplexMatrix p = ComplexMatrix::Zero(pr.dim, pr.dim);
  ComplexMatrix q = ComplexMatrix::Zero(pr.dim, pr.dim);
  constexpr double kFeasTol = 1e-10;
  for (int r = 0; r < rounds; ++r) {
    ComplexMatrix y = psd_project(hermitian_part(x + p));
    p = x + p - y;
    x = std::move(y);
    ComplexMatrix z = pr.gamma(psd_project(hermitian_part(pr.gamma(x + q))));
    q = x + q - z;
    x = std::move(z);
    x += ((1.0 - x.trace().real()) / static_cast<double>(pr.dim)) * id;
    if (min_eigenvalue(hermitian_part(x)) >= -kFeasTol && min_eigenvalue(hermitian_part(pr.gamma(x))) >= -kFeasTol)
      break;
  }
  return x;
}

ComplexMatrix positive_projector(const ComplexMatrix& h) {
  const Spectrum spec = hermitian_eig(hermitian_part(h));
  const double cut = 1e-12 * std::max(1.0, spec.values.cwiseAbs().maxCoeff());
  ComplexMatrix out = ComplexMatrix::Zero(h.rows(), h.cols());
  for (Eigen::Index i = 0; i < spec.values.size(); ++i)
    if (spec.values(i) > cut) out += spec.vectors.col(i) * spec.vectors.col(i).adjoint();
  return out;
}

bool is_two_qubit_cut(const DensityMatrix& rho, const Bipartition& cut) {
  return rho.layout().dim_of(cut.a()) == 2 && rho.layout().dim_of(cut.b()) == 2;
}

// Best 2x2 lower bound over two-qubit marginals straddling the cut.
double local_reduction_bound(const DensityMatrix& rho, const Bipartition& cut, const SolverConfig& cfg) {
  const QubitRefinement refined = split_into_qubits(rho);
  std::vector<int> side_a, side_b;
  for (std::size_t q = 0; q < refined.owner.size(); ++q) {
    if (refined.state.layout().dim(static_cast<int>(q)) != 2) continue;
    const bool in_a = std::binary_search(cut.a().begin(), cut.a().end(), refined.owner[q]);
    (in_a ? side_a : side_b).push_back(static_cast<int>(q));
  }
  double best = 0.0;
  std::vector<ComplexMatrix> seen;
  for (int qa : side_a) {
    for (int qb : side_b) {
      const DensityMatrix pair = partial_trace(refined.state, {std::min(qa, qb), std::max(qa, qb)});
      const Bipartition pair_cut({0}, {1});
      if (is_ppt(pair, pair_cut, 0.0)) continue;
      const bool repeat = std::any_of(seen.begin(), seen.end(),
                                      [&](const ComplexMatrix& m) { return max_abs_diff(m, pair.matrix()) == 0.0; });
      if (repeat) continue;
      seen.push_back(pair.matrix());
      best = std::max(best, ppt_distance(pair, pair_cut, cfg).bounds.lower);
    }
  }
  return best;
}

}  // namespace

double separable_overlap_max(const ComplexMatrix& p, const SystemLayout& layout, const Bipartition& cut,
                             const SolverConfig& cfg) {
  cut.check_covers(layout);
  if (layout.sites() != 2 || layout.dim(0) != 2 || layout.dim(1) != 2)
    throw UnsupportedError("separable_overlap_max: only 2x2 cuts are supported");
  if (p.rows() != 4 || p.cols() != 4) throw ValidationError("separable_overlap_max: operator must be 4x4");
  require_hermitian(p, 1e-9, "separable_overlap_max");
  const RealVector spec = hermitian_eigenvalues(p, 1e-9);
  if (spec(3) < -1e-9 || spec(0) > 1.0 + 1e-9)
    throw ValidationError("separable_overlap_max: operator must satisfy 0 <= P <= I");

  double best = 0.0;
  constexpr int kGrid = 8;
  for (int ti = 0; ti < kGrid; ++ti) {
    const double theta = std::numbers::pi * (ti + 0.5) / kGrid;
    for (int pi = 0; pi < kGrid; ++pi) {
      const double phi = 2.0 * std::numbers::pi * pi / kGrid;
      Vector2c a(std::cos(theta / 2), std::polar(std::sin(theta / 2), phi));
      best = std::max(best, refine_product_overlap(p, a));
    }
  }
  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> gauss;
  for (int s = 0; s < 16; ++s) {
    Vector2c a;
    for (int i = 0; i < 2; ++i) a(i) = Complex(gauss(rng), gauss(rng));
    best = std::max(best, refine_product_overlap(p, a.normalized()));
  }
  return best;
}

double separable_overlap_bound(const ComplexMatrix& p, const SystemLayout& layout, const Bipartition& cut,
                               const SolverConfig& cfg) {
  const double searched = separable_overlap_max(p, layout, cut, cfg) + kOverlapSafetyMargin;
  const Spectrum sp = hermitian_eig(p, 1e-9);
  // Top eigenvector as a 2x2 coefficient matrix; A is site cut.a()[0].
  Eigen::Matrix2cd coeff;
  const bool a_first = cut.a().front() == 0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) coeff(i, j) = a_first ? sp.vectors(2 * i + j, 0) : sp.vectors(2 * j + i, 0);
  const double s1 = Eigen::JacobiSVD<Eigen::Matrix2cd>(coeff).singularValues()(0);
  double spectral = std::max(sp.values(0), 0.0) * s1 * s1;
  for (Eigen::Index i = 1; i < sp.values.size(); ++i) spectral += std::max(sp.values(i), 0.0);
  return std::min(searched, spectral + kSpectralOverlapMargin);
}

double witness_lower_bound(const DensityMatrix& rho, const ComplexMatrix& p, const Bipartition& cut,
                           const SolverConfig& cfg) {
  return (p * rho.matrix()).trace().real() - separable_overlap_bound(p, rho.layout(), cut, cfg);
}

namespace {

PptDistanceResult solve(const DensityMatrix& rho, const Bipartition& cut, const SolverConfig& cfg, bool descend) {
  cfg.validate();
  cut.check_covers(rho.layout());
  const std::size_t dim = rho.layout().total_dim();
  if (dim > kMaxSolverDim) {
    throw CapacityError("ppt_distance: dimension " + std::to_string(dim) + " exceeds the solver limit of " +
                        std::to_string(kMaxSolverDim));
  }
  const Problem pr{rho, cut.b(), static_cast<Eigen::Index>(dim)};
  const std::size_t dim_a = rho.layout().dim_of(cut.a());
  const std::size_t dim_b = rho.layout().dim_of(cut.b());

  PptDistanceResult out;
  const NegativityResult neg = negativity(rho, cut);
  out.negativity_lower = neg_distance_lb(neg.negativity, dim_a, dim_b);
  if (neg.negative_eigenvalues.empty()) {
    out.feasible_state = rho.matrix();
    out.bounds = {0.0, 0.0, true, "ppt", "ppt"};
    return out;
  }

  BoundInterval& b = out.bounds;
  b.lower = out.negativity_lower;
  b.lower_certificate = "negativity";
  const bool two_qubit = is_two_qubit_cut(rho, cut);
  if (!two_qubit) {
    const double local = local_reduction_bound(rho, cut, cfg);
    if (local > b.lower) {
      b.lower = local;
      b.lower_certificate = "local-reduction";
    }
  }

  // Starting points: mixtures with the product of marginals and with I/D.
  const ComplexMatrix marginals_a = partial_trace(rho, cut.a()).matrix();
  const ComplexMatrix marginals_b = partial_trace(rho, cut.b()).matrix();
  std::vector<int> ab_order = cut.a();
  ab_order.insert(ab_order.end(), cut.b().begin(), cut.b().end());
  // Build rho_A (x) rho_B in (A, B) order, then move it back to the layout order.
  std::vector<int> inverse(ab_order.size());
  for (std::size_t i = 0; i < ab_order.size(); ++i) inverse[static_cast<std::size_t>(ab_order[i])] = static_cast<int>(i);
  std::vector<int> ab_dims;
  for (int s : ab_order) ab_dims.push_back(rho.layout().dim(s));
  const ComplexMatrix product_ref =
      permute_sites(DensityMatrix::unchecked(tensor_product(marginals_a, marginals_b), SystemLayout(ab_dims)), inverse)
          .matrix();
  const ComplexMatrix mixed_ref = ComplexMatrix::Identity(pr.dim, pr.dim) / static_cast<double>(dim);

  ComplexMatrix best = mix_towards(pr, product_ref);
  double best_value = pr.objective(best);
  {
    ComplexMatrix alt = mix_towards(pr, mixed_ref);
    const double v = pr.objective(alt);
    if (v < best_value) {
      best = std::move(alt);
      best_value = v;
    }
  }

  if (descend) {
    // Nearest point of the PSD and PPT cones, as a third start.
    ComplexMatrix alt = make_feasible(pr, dykstra_project(pr, rho.matrix(), cfg.dykstra_rounds));
    const double v = pr.objective(alt);
    if (v < best_value) {
      best = std::move(alt);
      best_value = v;
    }
  }

  auto refresh_witness = [&] {
    if (!two_qubit) return;
    const double w = witness_lower_bound(rho, positive_projector(rho.matrix() - best), cut, cfg);
    if (w > b.lower) {
      b.lower = w;
      b.lower_certificate = "witness";
    }
  };
  refresh_witness();

  // Any -I/2 <= Y <= I/2 and B >= 0 give tr(Y rho) - lambda_max(Y + B^Gamma)
  // <= tr(Y (rho - sigma)) <= |rho - sigma|_tr for every PPT state sigma.
  auto refresh_dual = [&](const ComplexMatrix& y_raw, const ComplexMatrix& b_raw) {
    const Spectrum ys = hermitian_eig(hermitian_part(y_raw));
    const ComplexMatrix y = reconstruct(ys.values.cwiseMax(-0.5).cwiseMin(0.5), ys.vectors);
    const ComplexMatrix bg = pr.gamma(psd_project(hermitian_part(b_raw)));
    const ComplexMatrix m = hermitian_part(y + bg);
    const RealVector top = hermitian_eigenvalues(m, 1e-8);
    const double margin = 8.0 * static_cast<double>(dim) * std::numeric_limits<double>::epsilon() *
                          std::max(1.0, top.cwiseAbs().maxCoeff());
    const double value = (y * rho.matrix()).trace().real() - top(0) - margin;
    if (value > b.lower) {
      b.lower = value;
      b.lower_certificate = "ppt-dual";
    }
  };

  // Consensus ADMM on x1 = x2 = x3 = z: x1 carries the trace-norm term, x2
  // the PSD cone, x3 the PPT cone, and z the unit-trace plane. Every
  // kCheckEvery iterations z is made exactly feasible and scored.
  constexpr int kCheckEvery = 10;
  const ComplexMatrix id = ComplexMatrix::Identity(pr.dim, pr.dim);
  const double inv_d = 1.0 / static_cast<double>(dim);
  const double progress = 1e-3 * cfg.target_gap;
  double mu = static_cast<double>(dim) / (2.0 * cfg.step_size);
  ComplexMatrix z = best;
  std::array<ComplexMatrix, 3> u{ComplexMatrix::Zero(pr.dim, pr.dim), ComplexMatrix::Zero(pr.dim, pr.dim),
                                 ComplexMatrix::Zero(pr.dim, pr.dim)};
  std::array<ComplexMatrix, 3> x;
  int since_improvement = 0;
  int it = 0;
  const int max_iterations = descend ? cfg.max_iterations : 0;
  while (it < max_iterations && best_value - b.lower > cfg.target_gap && since_improvement < cfg.stall_iterations) {
    ++it;
    {
      const Spectrum sp = hermitian_eig(hermitian_part(rho.matrix() - z + u[0]));
      const double thr = 0.5 / mu;
      x[0] = rho.matrix() - reconstruct(sp.values.unaryExpr([thr](double v) {
                                          return v > thr ? v - thr : (v < -thr ? v + thr : 0.0);
                                        }),
                                        sp.vectors);
    }
    x[1] = psd_project(hermitian_part(z - u[1]));
    x[2] = pr.gamma(psd_project(hermitian_part(pr.gamma(z - u[2]))));
    const ComplexMatrix z_prev = z;
    z = (x[0] + u[0] + x[1] + u[1] + x[2] + u[2]) / 3.0;
    z += ((1.0 - z.trace().real()) * inv_d) * id;
    double primal = 0.0;
    for (int i = 0; i < 3; ++i) {
      u[i] += x[i] - z;
      primal += (x[i] - z).squaredNorm();
    }
    primal = std::sqrt(primal);
    const double dual = mu * std::sqrt(3.0) * (z - z_prev).norm();
    if (primal > 10.0 * dual) {
      mu *= 2.0;
      for (auto& ui : u) ui /= 2.0;
    } else if (dual > 10.0 * primal) {
      mu /= 2.0;
      for (auto& ui : u) ui *= 2.0;
    }

    if (it % kCheckEvery == 0) {
      ComplexMatrix candidate = make_feasible(pr, z);
      const double value = pr.objective(candidate);
      if (value < best_value - progress) {
        since_improvement = 0;
      } else {
        since_improvement += kCheckEvery;
      }
      if (value < best_value) {
        best_value = value;
        best = std::move(candidate);
      }
      refresh_dual(mu * u[0], mu * pr.gamma(u[2]));
      if (it % (10 * kCheckEvery) == 0) refresh_witness();
    }
  }
  if (it > 0) {
    ComplexMatrix candidate = make_feasible(pr, dykstra_project(pr, z, cfg.dykstra_rounds));
    const double value = pr.objective(candidate);
    if (value < best_value) {
      best_value = value;
      best = std::move(candidate);
    }
    refresh_witness();
  }

  out.iterations = it;
  out.feasible_state = std::move(best);
  b.upper = best_value;
  b.upper_certificate = "feasible-ppt-state";
  b.converged = b.upper - b.lower <= cfg.target_gap;
  return out;
}

}  // namespace

PptDistanceResult ppt_distance(const DensityMatrix& rho, const Bipartition& cut, const SolverConfig& cfg) {
  return solve(rho, cut, cfg, true);
}

PptDistanceResult ppt_distance_screen(const DensityMatrix& rho, const Bipartition& cut, const SolverConfig& cfg) {
  return solve(rho, cut, cfg, false);
}

}  // namespace kalaik
