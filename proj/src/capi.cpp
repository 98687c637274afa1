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

#include "kalaik.h"

#include "kalaik/entanglement.hpp"
#include "kalaik/error.hpp"
#include "kalaik/gridcount.hpp"
#include "kalaik/kmeasure.hpp"
#include "kalaik/qsys.hpp"
#include "kalaik/reports.hpp"
#include "kalaik/sepdist.hpp"

#include <exception>
#include <new>
#include <string>
#include <utility>

struct kk_state {
  kalaik::DensityMatrix rho;
};

struct kk_report {
  kalaik::Json json;
  std::string json_text;
  std::string csv_text;
};

namespace {

thread_local std::string g_last_error;

kk_status fail(kk_status status, const char* what) {
  g_last_error = what;
  return status;
}

template <typename F>
kk_status guarded(F&& body) {
  try {
    body();
    g_last_error.clear();
    return KK_OK;
  } catch (const kalaik::Error& e) {
    switch (e.kind()) {
      case kalaik::ErrorKind::validation: return fail(KK_ERR_VALIDATION, e.what());
      case kalaik::ErrorKind::capacity: return fail(KK_ERR_CAPACITY, e.what());
      case kalaik::ErrorKind::unsupported: return fail(KK_ERR_UNSUPPORTED, e.what());
    }
    return fail(KK_ERR_INTERNAL, e.what());
  } catch (const kalaik::Json::exception& e) {
    return fail(KK_ERR_VALIDATION, e.what());
  } catch (const std::bad_alloc&) {
    return fail(KK_ERR_CAPACITY, "out of memory");
  } catch (const std::exception& e) {
    return fail(KK_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(KK_ERR_INTERNAL, "unknown error");
  }
}

kalaik::SolverConfig to_config(const kk_solver_config* c) {
  kalaik::SolverConfig cfg;
  if (c) {
    cfg.max_iterations = c->max_iterations;
    cfg.target_gap = c->target_gap;
    cfg.step_size = c->step_size;
    cfg.dykstra_rounds = c->dykstra_rounds;
    cfg.seed = c->seed;
    cfg.stall_iterations = c->stall_iterations;
    cfg.refine_cuts = c->refine_cuts;
  }
  cfg.validate();
  return cfg;
}

kalaik::Json parse_params(const char* params_json) {
  if (!params_json || !*params_json) return kalaik::Json::object();
  return kalaik::Json::parse(params_json);
}

kk_status make_state(kk_state** out, auto&& build) {
  if (!out) return fail(KK_ERR_NULL_ARG, "null output pointer");
  *out = nullptr;
  return guarded([&] { *out = new kk_state{build()}; });
}

kk_status make_report(kk_report** out, auto&& build) {
  if (!out) return fail(KK_ERR_NULL_ARG, "null output pointer");
  *out = nullptr;
  return guarded([&] {
    kalaik::Json j = build();
    std::string text = j.dump(2) + "\n";
    *out = new kk_report{std::move(j), std::move(text), {}};
  });
}

kalaik::Bipartition cut_of(const kk_state* s, std::uint64_t a_mask) {
  return kalaik::Bipartition::from_mask(a_mask, s->rho.sites());
}

}  // namespace

extern "C" {

void kk_solver_config_init(kk_solver_config* cfg) {
  if (!cfg) return;
  const kalaik::SolverConfig d;
  *cfg = kk_solver_config{d.max_iterations, d.target_gap, d.step_size, d.dykstra_rounds, d.seed, d.stall_iterations, d.refine_cuts};
}

const char* kk_last_error(void) { return g_last_error.c_str(); }

const char* kk_version(void) { return KALAIK_VERSION; }

const char* kk_status_name(kk_status status) {
  switch (status) {
    case KK_OK: return "ok";
    case KK_ERR_VALIDATION: return "validation";
    case KK_ERR_CAPACITY: return "capacity";
    case KK_ERR_UNSUPPORTED: return "unsupported";
    case KK_ERR_INTERNAL: return "internal";
    case KK_ERR_NULL_ARG: return "null-argument";
  }
  return "unknown";
}

kk_status kk_state_werner(double p, kk_state** out) {
  return make_state(out, [&] { return kalaik::werner(p); });
}

kk_status kk_state_bell_pairs(int pairs, kk_state** out) {
  return make_state(out, [&] { return kalaik::bell_pairs(pairs); });
}

kk_status kk_state_w(int n, kk_state** out) {
  return make_state(out, [&] { return kalaik::w_state(n); });
}

kk_status kk_state_w_reduced(int n, int k, kk_state** out) {
  return make_state(out, [&] { return kalaik::w_reduced(n, k); });
}

kk_status kk_state_cluster_path(int n, kk_state** out) {
  return make_state(out, [&] { return kalaik::cluster_state(kalaik::path_graph(n)); });
}

kk_status kk_state_grid_pairs(int rows, int cols, double p, kk_state** out) {
  return make_state(out, [&] { return kalaik::grid_pair_state(rows, cols, p); });
}

kk_status kk_state_phase_cat(int n, double phi, kk_state** out) {
  return make_state(out, [&] { return kalaik::phase_cat(n, phi); });
}

kk_status kk_state_from_matrix(const int* dims, int n_sites, const double* re, const double* im, kk_state** out) {
  if (!dims || !re) return fail(KK_ERR_NULL_ARG, "null dims or matrix");
  return make_state(out, [&] {
    if (n_sites < 1) throw kalaik::ValidationError("from_matrix: need at least one site");
    kalaik::SystemLayout layout(std::vector<int>(dims, dims + n_sites));
    if (layout.total_dim() > kalaik::kMaxStateDim) throw kalaik::CapacityError("from_matrix: dimension too large");
    const auto d = static_cast<Eigen::Index>(layout.total_dim());
    kalaik::ComplexMatrix m(d, d);
    for (Eigen::Index r = 0; r < d; ++r)
      for (Eigen::Index c = 0; c < d; ++c) {
        const auto at = static_cast<std::size_t>(r * d + c);
        m(r, c) = {re[at], im ? im[at] : 0.0};
      }
    return kalaik::DensityMatrix(std::move(m), std::move(layout));
  });
}

kk_status kk_state_tensor(const kk_state* a, const kk_state* b, kk_state** out) {
  if (!a || !b) return fail(KK_ERR_NULL_ARG, "null state");
  return make_state(out, [&] { return kalaik::tensor_product(a->rho, b->rho); });
}

kk_status kk_state_partial_trace(const kk_state* state, const int* keep, int n_keep, kk_state** out) {
  if (!state || (!keep && n_keep > 0)) return fail(KK_ERR_NULL_ARG, "null state or site list");
  return make_state(out, [&] {
    if (n_keep < 1) throw kalaik::ValidationError("partial_trace: keep at least one site");
    return kalaik::partial_trace(state->rho, kalaik::SiteSet(keep, keep + n_keep));
  });
}

void kk_state_free(kk_state* state) { delete state; }

int kk_state_sites(const kk_state* state) { return state ? state->rho.sites() : 0; }

size_t kk_state_dim(const kk_state* state) { return state ? static_cast<size_t>(state->rho.dim()) : 0; }

kk_status kk_state_matrix(const kk_state* state, double* re, double* im) {
  if (!state || !re || !im) return fail(KK_ERR_NULL_ARG, "null state or buffer");
  return guarded([&] {
    const auto& m = state->rho.matrix();
    const Eigen::Index d = m.rows();
    for (Eigen::Index r = 0; r < d; ++r)
      for (Eigen::Index c = 0; c < d; ++c) {
        re[r * d + c] = m(r, c).real();
        im[r * d + c] = m(r, c).imag();
      }
  });
}

kk_status kk_negativity(const kk_state* state, uint64_t a_mask, double* out) {
  if (!state || !out) return fail(KK_ERR_NULL_ARG, "null state or output");
  return guarded([&] { *out = kalaik::negativity(state->rho, cut_of(state, a_mask)).negativity; });
}

kk_status kk_w_negativity(int n, int k, int j, double* out) {
  if (!out) return fail(KK_ERR_NULL_ARG, "null output");
  return guarded([&] { *out = kalaik::w_negativity(n, k, j); });
}

kk_status kk_ppt_distance(const kk_state* state, uint64_t a_mask, const kk_solver_config* cfg, double* lower,
                          double* upper, int* converged) {
  if (!state || !lower || !upper) return fail(KK_ERR_NULL_ARG, "null state or output");
  return guarded([&] {
    const auto r = kalaik::ppt_distance(state->rho, cut_of(state, a_mask), to_config(cfg));
    *lower = r.bounds.lower;
    *upper = r.bounds.upper;
    if (converged) *converged = r.bounds.converged ? 1 : 0;
  });
}

kk_status kk_trace_distance(const kk_state* a, const kk_state* b, double* out) {
  if (!a || !b || !out) return fail(KK_ERR_NULL_ARG, "null state or output");
  return guarded([&] { *out = kalaik::trace_distance(a->rho, b->rho); });
}

kk_status kk_count_connected(int rows, int cols, uint64_t* out) {
  if (!out) return fail(KK_ERR_NULL_ARG, "null output");
  return guarded([&] { *out = kalaik::count_connected_subsets(kalaik::grid_graph(rows, cols), 2); });
}

kk_status kk_k_w_lower(int n, double* out) {
  if (!out) return fail(KK_ERR_NULL_ARG, "null output");
  return guarded([&] { *out = kalaik::k_w_lower(n).k_w_lower; });
}

kk_status kk_report_wneg(int n, int k, int j, kk_report** out) {
  return make_report(out, [&] {
    return kalaik::reports::wneg(n, k > 0 ? std::optional<int>(k) : std::nullopt,
                                 j > 0 ? std::optional<int>(j) : std::nullopt);
  });
}

kk_status kk_report_wk(int n, kk_report** out) {
  return make_report(out, [&] { return kalaik::reports::wk(n); });
}

kk_status kk_report_kmeasure(const kk_state* state, const char* label, const char* params_json,
                             const kk_solver_config* cfg, int include_full_set, int workers, kk_report** out) {
  if (!state) return fail(KK_ERR_NULL_ARG, "null state");
  return make_report(out, [&] {
    if (workers < 1) throw kalaik::ValidationError("kmeasure: workers must be >= 1");
    kalaik::KMeasureOptions opts;
    opts.include_full_set = include_full_set != 0;
    opts.workers = static_cast<unsigned>(workers);
    return kalaik::reports::kmeasure(state->rho, label ? label : "custom", parse_params(params_json),
                                     to_config(cfg), opts);
  });
}

kk_status kk_report_gridk(int rows, int cols, double p, int verify, const kk_solver_config* cfg, kk_report** out) {
  return make_report(out, [&] { return kalaik::reports::gridk(rows, cols, p, verify != 0, to_config(cfg)); });
}

kk_status kk_report_count(int rows, int cols, kk_report** out) {
  return make_report(out, [&] { return kalaik::reports::count(rows, cols); });
}

kk_status kk_report_sepdist(const kk_state* state, uint64_t a_mask, const char* label, const char* params_json,
                            const kk_solver_config* cfg, kk_report** out) {
  if (!state) return fail(KK_ERR_NULL_ARG, "null state");
  return make_report(out, [&] {
    return kalaik::reports::sepdist(state->rho, cut_of(state, a_mask), label ? label : "custom",
                                    parse_params(params_json), to_config(cfg));
  });
}

kk_status kk_report_catphase(int n, const double* phis, int count, kk_report** out) {
  if (!phis && count > 0) return fail(KK_ERR_NULL_ARG, "null phase list");
  return make_report(out, [&] {
    if (count < 1) throw kalaik::ValidationError("catphase: need at least one phase");
    return kalaik::reports::catphase(n, std::span<const double>(phis, static_cast<std::size_t>(count)));
  });
}

const char* kk_report_json(const kk_report* report) { return report ? report->json_text.c_str() : ""; }

const char* kk_report_csv(const kk_report* report) {
  if (!report) return "";
  // Built lazily; a report handle is not shared across threads.
  auto* mutable_report = const_cast<kk_report*>(report);
  if (mutable_report->csv_text.empty()) mutable_report->csv_text = kalaik::reports::to_csv(report->json);
  return report->csv_text.c_str();
}

int kk_report_converged(const kk_report* report) {
  return report && kalaik::reports::converged(report->json) ? 1 : 0;
}

void kk_report_free(kk_report* report) { delete report; }

}  // extern "C"
