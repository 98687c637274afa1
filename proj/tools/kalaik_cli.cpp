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

// Command-line front end over the C API.

#include "kalaik.h"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <memory>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitNotConverged = 3;

struct StateDeleter {
  void operator()(kk_state* s) const { kk_state_free(s); }
};
struct ReportDeleter {
  void operator()(kk_report* r) const { kk_report_free(r); }
};
using StatePtr = std::unique_ptr<kk_state, StateDeleter>;
using ReportPtr = std::unique_ptr<kk_report, ReportDeleter>;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ApiError : public std::runtime_error {
 public:
  ApiError(kk_status status, const std::string& what) : std::runtime_error(what), status(status) {}
  kk_status status;
};

void check(kk_status status) {
  if (status != KK_OK) throw ApiError(status, kk_last_error());
}

// Params echo, at the precision of the report values.
std::string num(double v) {
  std::ostringstream out;
  out.precision(12);
  out << v;
  return out.str();
}

struct Options {
  std::string format = "json";
  kk_solver_config solver{};

  // Subcommand inputs; which ones apply depends on the subcommand.
  int n = 0, k = 0, j = 0, pairs = 2, rows = 0, cols = 0, workers = 1;
  double p = 1.0;
  bool verify = false, no_full_set = false;
  std::string state;
  std::vector<double> phis{0.0, std::numbers::pi / 4, std::numbers::pi / 2, std::numbers::pi};
};

void add_format(CLI::App* cmd, Options& o) {
  cmd->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
}

void add_solver(CLI::App* cmd, Options& o) {
  cmd->add_option("--max-iterations", o.solver.max_iterations, "Solver iteration cap")->capture_default_str();
  cmd->add_option("--target-gap", o.solver.target_gap, "Upper minus lower bound at which the solver stops")
      ->capture_default_str();
  cmd->add_option("--step-size", o.solver.step_size, "Initial trace-norm threshold in units of 1/D")->capture_default_str();
  cmd->add_option("--dykstra-rounds", o.solver.dykstra_rounds, "Dykstra rounds when restoring feasibility")
      ->capture_default_str();
  cmd->add_option("--seed", o.solver.seed, "Seed for randomized starts")->capture_default_str();
  cmd->add_option("--stall-iterations", o.solver.stall_iterations, "Stop after this many iterations without progress")
      ->capture_default_str();
  cmd->add_option("--refine-cuts", o.solver.refine_cuts, "Most cuts per subset refined by the full solver")
      ->capture_default_str();
}

// Rejects flags that do not apply to the selected named state.
void forbid(const CLI::App* cmd, const std::string& state, std::initializer_list<const char*> names) {
  for (const char* name : names)
    if (cmd->count(name) > 0) throw UsageError(std::string(name) + " does not apply to --state " + state);
}

void require(const CLI::App* cmd, const std::string& state, std::initializer_list<const char*> names) {
  for (const char* name : names)
    if (cmd->count(name) == 0) throw UsageError("--state " + state + " requires " + name);
}

int emit(const kk_report* report, const Options& o) {
  std::fputs(o.format == "csv" ? kk_report_csv(report) : kk_report_json(report), stdout);
  std::fflush(stdout);
  if (!kk_report_converged(report)) {
    std::cerr << "warning: solver did not reach the target gap; bounds are still valid\n";
    return kExitNotConverged;
  }
  return kExitOk;
}

ReportPtr run_kmeasure(const CLI::App* cmd, const Options& o) {
  kk_state* raw = nullptr;
  std::string params;
  if (o.state == "w") {
    forbid(cmd, o.state, {"--pairs", "--rows", "--cols", "--p"});
    require(cmd, o.state, {"--n"});
    check(kk_state_w(o.n, &raw));
    params = "{\"n\":" + std::to_string(o.n) + "}";
  } else if (o.state == "cluster-path") {
    forbid(cmd, o.state, {"--pairs", "--rows", "--cols", "--p"});
    require(cmd, o.state, {"--n"});
    check(kk_state_cluster_path(o.n, &raw));
    params = "{\"n\":" + std::to_string(o.n) + "}";
  } else if (o.state == "bell-pairs") {
    forbid(cmd, o.state, {"--n", "--rows", "--cols", "--p"});
    check(kk_state_bell_pairs(o.pairs, &raw));
    params = "{\"pairs\":" + std::to_string(o.pairs) + "}";
  } else {
    forbid(cmd, o.state, {"--n", "--pairs"});
    require(cmd, o.state, {"--rows", "--cols"});
    check(kk_state_grid_pairs(o.rows, o.cols, o.p, &raw));
    params = "{\"rows\":" + std::to_string(o.rows) + ",\"cols\":" + std::to_string(o.cols) + ",\"p\":" + num(o.p) +
             "}";
  }
  StatePtr state(raw);
  kk_report* report = nullptr;
  check(kk_report_kmeasure(state.get(), o.state.c_str(), params.c_str(), &o.solver, o.no_full_set ? 0 : 1,
                           o.workers, &report));
  return ReportPtr(report);
}

ReportPtr run_sepdist(const CLI::App* cmd, const Options& o) {
  kk_state* raw = nullptr;
  std::string params = "{}";
  std::uint64_t a_mask = 1;
  if (o.state == "bell") {
    forbid(cmd, o.state, {"--p", "--n", "--k", "--j"});
    check(kk_state_werner(1.0, &raw));
  } else if (o.state == "werner") {
    forbid(cmd, o.state, {"--n", "--k", "--j"});
    require(cmd, o.state, {"--p"});
    check(kk_state_werner(o.p, &raw));
    params = "{\"p\":" + num(o.p) + "}";
  } else if (o.state == "product") {
    forbid(cmd, o.state, {"--p", "--n", "--k", "--j"});
    // |0><0| (x) |+><+|
    const int dims[] = {2, 2};
    const double re[16] = {0.5, 0.5, 0, 0, 0.5, 0.5, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0};
    check(kk_state_from_matrix(dims, 2, re, nullptr, &raw));
  } else {
    forbid(cmd, o.state, {"--p"});
    require(cmd, o.state, {"--n", "--k", "--j"});
    check(kk_state_w_reduced(o.n, o.k, &raw));
    if (o.j < 1 || o.j >= o.k) {
      kk_state_free(raw);
      throw UsageError("--j must satisfy 1 <= j < k");
    }
    a_mask = (std::uint64_t{1} << o.j) - 1;
    params = "{\"n\":" + std::to_string(o.n) + ",\"k\":" + std::to_string(o.k) + ",\"j\":" + std::to_string(o.j) +
             "}";
  }
  StatePtr state(raw);
  kk_report* report = nullptr;
  check(kk_report_sepdist(state.get(), a_mask, o.state.c_str(), params.c_str(), &o.solver, &report));
  return ReportPtr(report);
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  kk_solver_config_init(&o.solver);

  CLI::App app{"Certified bounds on the K entanglement measure for W states and grids of entangled pairs"};
  app.set_version_flag("--version", std::string(kk_version()));
  app.require_subcommand(1);

  auto* wneg = app.add_subcommand("wneg", "Negativity of W-state marginals across j|k-j cuts");
  wneg->add_option("--n", o.n, "Qubits in the W state")->required();
  wneg->add_option("--k", o.k, "Marginal size (all 2..n when omitted)");
  wneg->add_option("--j", o.j, "Sites on the A side (all 1..k-1 when omitted)");
  add_format(wneg, o);

  auto* wk = app.add_subcommand("wk", "Certified lower bound on K for the W state");
  wk->add_option("--n", o.n, "Qubits in the W state")->required();
  add_format(wk, o);

  auto* km = app.add_subcommand("kmeasure", "Exhaustive K bounds for a named state");
  km->add_option("--state", o.state, "Named state")
      ->required()
      ->check(CLI::IsMember({"w", "cluster-path", "bell-pairs", "grid"}));
  km->add_option("--n", o.n, "Sites (w, cluster-path)");
  km->add_option("--pairs", o.pairs, "Bell pairs (bell-pairs)")->capture_default_str();
  km->add_option("--rows", o.rows, "Grid rows (grid)");
  km->add_option("--cols", o.cols, "Grid columns (grid)");
  km->add_option("--p", o.p, "Werner weight of each edge pair (grid)")->capture_default_str();
  km->add_option("--workers", o.workers, "Parallel workers")->capture_default_str();
  km->add_flag("--no-full-set", o.no_full_set, "Leave the full site set out of the sum");
  add_format(km, o);
  add_solver(km, o);

  auto* gridk = app.add_subcommand("gridk", "Lower bound N * delta for a grid of Werner pairs");
  gridk->add_option("--rows", o.rows, "Grid rows")->required();
  gridk->add_option("--cols", o.cols, "Grid columns")->required();
  gridk->add_option("--p", o.p, "Werner weight of each edge pair")->capture_default_str();
  gridk->add_flag("--verify", o.verify, "Check every subset of a small grid against its coarse-grained state");
  add_format(gridk, o);
  add_solver(gridk, o);

  auto* count = app.add_subcommand("count", "Connected vertex subsets of a grid");
  count->add_option("--rows", o.rows, "Grid rows")->required();
  count->add_option("--cols", o.cols, "Grid columns")->required();
  add_format(count, o);

  auto* sep = app.add_subcommand("sepdist", "Distance to the PPT set for a named state");
  sep->add_option("--state", o.state, "Named state")
      ->required()
      ->check(CLI::IsMember({"bell", "werner", "product", "w-marginal"}));
  sep->add_option("--p", o.p, "Werner weight (werner)");
  sep->add_option("--n", o.n, "W-state qubits (w-marginal)");
  sep->add_option("--k", o.k, "Marginal size (w-marginal)");
  sep->add_option("--j", o.j, "Sites on the A side (w-marginal)");
  add_format(sep, o);
  add_solver(sep, o);

  auto* cat = app.add_subcommand("catphase", "Marginals of phase-twisted cat states");
  cat->add_option("--n", o.n, "Qubits")->required();
  cat->add_option("--phi", o.phis, "Phases in radians")->delimiter(',')->capture_default_str();
  add_format(cat, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalid;
  }

  try {
    kk_report* raw = nullptr;
    ReportPtr report;
    if (*wneg) {
      check(kk_report_wneg(o.n, wneg->count("--k") ? o.k : 0, wneg->count("--j") ? o.j : 0, &raw));
      report.reset(raw);
    } else if (*wk) {
      check(kk_report_wk(o.n, &raw));
      report.reset(raw);
    } else if (*km) {
      report = run_kmeasure(km, o);
    } else if (*gridk) {
      check(kk_report_gridk(o.rows, o.cols, o.p, o.verify ? 1 : 0, &o.solver, &raw));
      report.reset(raw);
    } else if (*count) {
      check(kk_report_count(o.rows, o.cols, &raw));
      report.reset(raw);
    } else if (*sep) {
      report = run_sepdist(sep, o);
    } else {
      check(kk_report_catphase(o.n, o.phis.data(), static_cast<int>(o.phis.size()), &raw));
      report.reset(raw);
    }
    return emit(report.get(), o);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const ApiError& e) {
    std::cerr << "error (" << kk_status_name(e.status) << "): " << e.what() << "\n";
    return e.status == KK_ERR_INTERNAL ? kExitInternal : kExitInvalid;
  }
}
