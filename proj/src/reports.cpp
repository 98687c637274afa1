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

#include "kalaik/reports.hpp"

#include "kalaik/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <sstream>

namespace kalaik {

double round_sig(double value, int digits) {
  if (!std::isfinite(value) || value == 0.0) return value == 0.0 ? 0.0 : value;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, value);
  const double out = std::strtod(buf, nullptr);
  return out == 0.0 ? 0.0 : out;
}

namespace {

Json big_to_json(const BigInt& v) {
  if (v >= 0 && v <= std::numeric_limits<std::uint64_t>::max()) return v.convert_to<std::uint64_t>();
  return v.str();
}

BigInt big_from_json(const Json& j) {
  if (j.is_string()) return BigInt(j.get<std::string>());
  return BigInt(j.get<std::uint64_t>());
}

Json sites_of(SubsetMask m) { return m.vertices(); }

}  // namespace

CertificateKind certificate_kind_from_string(const std::string& s) {
  for (auto kind : {CertificateKind::block_diagonal, CertificateKind::ppt_low_dim, CertificateKind::product})
    if (to_string(kind) == s) return kind;
  throw ValidationError("unknown certificate kind '" + s + "'");
}

void to_json(Json& j, const BoundInterval& b) {
  j = Json{{"lower", round_sig(b.lower)},
           {"upper", round_sig(b.upper)},
           {"converged", b.converged},
           {"lower_certificate", b.lower_certificate},
           {"upper_certificate", b.upper_certificate}};
}

void from_json(const Json& j, BoundInterval& b) {
  j.at("lower").get_to(b.lower);
  j.at("upper").get_to(b.upper);
  j.at("converged").get_to(b.converged);
  j.at("lower_certificate").get_to(b.lower_certificate);
  j.at("upper_certificate").get_to(b.upper_certificate);
}

void to_json(Json& j, const SubsetDelta& s) {
  j = Json{{"mask", s.mask.bits},
           {"sites", sites_of(s.mask)},
           {"delta", s.delta},
           {"negativity_lower", round_sig(s.negativity_lower)},
           {"best_cut_mask", s.best_cut_mask}};
}

void from_json(const Json& j, SubsetDelta& s) {
  j.at("mask").get_to(s.mask.bits);
  j.at("delta").get_to(s.delta);
  j.at("negativity_lower").get_to(s.negativity_lower);
  j.at("best_cut_mask").get_to(s.best_cut_mask);
}

void to_json(Json& j, const CertifiedZero& c) {
  j = Json{{"mask", c.mask.bits},
           {"sites", sites_of(c.mask)},
           {"certificate", std::string(to_string(c.kind))},
           {"cut_mask", c.cut_mask}};
}

void from_json(const Json& j, CertifiedZero& c) {
  j.at("mask").get_to(c.mask.bits);
  c.kind = certificate_kind_from_string(j.at("certificate").get<std::string>());
  j.at("cut_mask").get_to(c.cut_mask);
}

void to_json(Json& j, const KReport& r) {
  j = Json{{"n_sites", r.n_sites},
           {"include_full_set", r.include_full_set},
           {"k_lower", round_sig(r.k_lower)},
           {"k_upper", round_sig(r.k_upper)},
           {"k_negativity_lower", round_sig(r.k_negativity_lower)},
           {"converged", r.converged},
           {"skipped_zero", r.skipped_zero},
           {"per_subset", r.per_subset},
           {"certified_zero", r.certified_zero}};
}

void from_json(const Json& j, KReport& r) {
  j.at("n_sites").get_to(r.n_sites);
  j.at("include_full_set").get_to(r.include_full_set);
  j.at("k_lower").get_to(r.k_lower);
  j.at("k_upper").get_to(r.k_upper);
  j.at("k_negativity_lower").get_to(r.k_negativity_lower);
  j.at("converged").get_to(r.converged);
  j.at("skipped_zero").get_to(r.skipped_zero);
  j.at("per_subset").get_to(r.per_subset);
  j.at("certified_zero").get_to(r.certified_zero);
}

void to_json(Json& j, const WLowerTerm& t) {
  j = Json{{"k", t.k},
           {"binomial", big_to_json(t.binomial)},
           {"argmin_j", t.argmin_j},
           {"negativity", round_sig(t.negativity)},
           {"delta_lower", round_sig(t.delta_lower)},
           {"contribution", round_sig(t.contribution)}};
}

void from_json(const Json& j, WLowerTerm& t) {
  j.at("k").get_to(t.k);
  t.binomial = big_from_json(j.at("binomial"));
  j.at("argmin_j").get_to(t.argmin_j);
  j.at("negativity").get_to(t.negativity);
  j.at("delta_lower").get_to(t.delta_lower);
  j.at("contribution").get_to(t.contribution);
}

void to_json(Json& j, const WLowerReport& r) {
  j = Json{{"n", r.n}, {"k_w_lower", round_sig(r.k_w_lower)}, {"terms", r.terms}};
}

void from_json(const Json& j, WLowerReport& r) {
  j.at("n").get_to(r.n);
  j.at("k_w_lower").get_to(r.k_w_lower);
  j.at("terms").get_to(r.terms);
}

void to_json(Json& j, const GridKReport& r) {
  j = Json{{"rows", r.rows},
           {"cols", r.cols},
           {"p", round_sig(r.p)},
           {"N", big_to_json(r.n_connected)},
           {"count_method", r.count_method},
           {"edge_distance", r.edge_distance},
           {"delta", round_sig(r.delta)},
           {"k_lower", round_sig(r.k_lower)}};
}

void from_json(const Json& j, GridKReport& r) {
  j.at("rows").get_to(r.rows);
  j.at("cols").get_to(r.cols);
  j.at("p").get_to(r.p);
  r.n_connected = big_from_json(j.at("N"));
  j.at("count_method").get_to(r.count_method);
  j.at("edge_distance").get_to(r.edge_distance);
  j.at("delta").get_to(r.delta);
  j.at("k_lower").get_to(r.k_lower);
}

namespace reports {

Json wneg(int n, std::optional<int> k, std::optional<int> j) {
  if (n < 2) throw ValidationError("wneg: n must be >= 2");
  const int k_lo = k.value_or(2);
  const int k_hi = k.value_or(n);
  if (k && !(2 <= *k && *k <= n)) throw ValidationError("wneg: need 2 <= k <= n");
  // Brute-force column only while the dense W state stays small.
  const bool brute = n <= 8;
  const std::optional<DensityMatrix> w = brute ? std::optional<DensityMatrix>(w_state(n)) : std::nullopt;
  Json rows = Json::array();
  for (int kk = k_lo; kk <= k_hi; ++kk) {
    const int j_lo = j.value_or(1);
    const int j_hi = j.value_or(kk - 1);
    if (j && !(1 <= *j && *j < kk)) throw ValidationError("wneg: need 1 <= j < k");
    std::optional<DensityMatrix> marginal;
    if (brute) {
      SiteSet keep;
      for (int s = 0; s < kk; ++s) keep.push_back(s);
      marginal = partial_trace(*w, keep);
    }
    for (int jj = j_lo; jj <= j_hi; ++jj) {
      const double neg = w_negativity(n, kk, jj);
      Json row{{"n", n},
               {"k", kk},
               {"j", jj},
               {"negativity", round_sig(neg)},
               {"printed_form", round_sig(w_negativity_printed(n, kk, jj))},
               {"distance_lower", round_sig(neg / std::ldexp(1.0, std::min(jj, kk - jj)))}};
      if (marginal) {
        SiteSet a, b;
        for (int s = 0; s < kk; ++s) (s < jj ? a : b).push_back(s);
        row["negativity_brute_force"] = round_sig(negativity(*marginal, Bipartition(a, b)).negativity);
      }
      rows.push_back(std::move(row));
    }
  }
  Json out{{"report", "wneg"}, {"n", n}, {"rows", rows}};
  if (rows.size() == 1) out["negativity"] = rows[0]["negativity"];
  return out;
}

Json wk(int n) {
  Json out = k_w_lower(n);
  const ReferenceWFormula ref = k_reference_w_formula(n);
  out["report"] = "wk";
  out["paper_formula"] = round_sig(ref.rhs.convert_to<double>());
  out["reference_exact"] = ref.rhs.str();
  out["reference_identity_holds"] = ref.equal;
  out["reference_status"] =
      "reference only: assumes Delta(rho_k) >= k/8n, which the certified per-cut bounds do not reproduce";
  return out;
}

Json kmeasure(const DensityMatrix& rho, const std::string& state, const Json& params, const SolverConfig& cfg,
              const KMeasureOptions& opts) {
  Json out = k_measure(rho, cfg, opts);
  out["report"] = "kmeasure";
  out["state"] = state;
  out["params"] = params;
  return out;
}

Json gridk(int rows, int cols, double p, bool verify, const SolverConfig& cfg) {
  const GridKReport r = k_grid_lower(rows, cols, p, cfg);
  Json out = r;
  out["report"] = "gridk";
  out["converged"] = r.edge_distance.converged;
  if (verify) {
    const GridVerifyReport v = k_grid_verify_small(rows, cols, p, cfg);
    Json subsets = Json::array();
    for (const auto& s : v.subsets) {
      Json row{{"mask", s.mask.bits},
               {"sites", sites_of(s.mask)},
               {"connected", s.connected},
               {"delta", s.delta.bounds},
               {"passed", s.passed}};
      row["certificate"] = s.delta.certificate ? Json(std::string(to_string(s.delta.certificate->kind))) : Json();
      subsets.push_back(std::move(row));
    }
    out["verify"] = Json{{"all_passed", v.all_passed}, {"slack", kGridCheckSlack}, {"rows", subsets}};
  }
  return out;
}

Json count(int rows, int cols) {
  if (rows < 1 || cols < 1) throw ValidationError("count: rows and cols must be >= 1");
  const int n = rows * cols;
  Json out{{"report", "count"}, {"rows", rows}, {"cols", cols}, {"vertices", n}};
  out["exact"] = n <= kMaxCountVertices ? Json(count_connected_subsets(grid_graph(rows, cols), 2)) : Json();
  if (rows == 1 || cols == 1) out["chain_closed_form"] = big_to_json(BigInt(n) * (n - 1) / 2);
  const int r = cols >= 3 ? rows : cols;
  const int c = cols >= 3 ? cols : rows;
  if (r >= 2 && c >= 3) {
    const CombSpec spec = comb_spec(r, c);
    BigInt bound = 1;
    bound <<= static_cast<unsigned>(spec.free.size());
    out["comb"] = Json{{"blue", spec.blue.size()},
                       {"free", spec.free.size()},
                       {"spine_along_columns", spec.transposed != (r != rows)},
                       {"lower_bound", big_to_json(bound)},
                       {"log2_bound_per_vertex", round_sig(static_cast<double>(spec.free.size()) / n)}};
  } else {
    out["comb"] = Json();
  }
  return out;
}

Json sepdist(const DensityMatrix& rho, const Bipartition& cut, const std::string& state, const Json& params,
             const SolverConfig& cfg) {
  const PptDistanceResult r = ppt_distance(rho, cut, cfg);
  const NegativityResult neg = negativity(rho, cut);
  const ComplexMatrix& sigma = r.feasible_state;
  Json out{{"report", "sepdist"},
           {"state", state},
           {"params", params},
           {"cut", Json{{"a", cut.a()}, {"b", cut.b()}}},
           {"distance", r.bounds},
           {"converged", r.bounds.converged},
           {"negativity", round_sig(neg.negativity)},
           {"negativity_lower", round_sig(r.negativity_lower)},
           {"iterations", r.iterations},
           {"feasible_state",
            Json{{"min_eigenvalue", round_sig(min_eigenvalue(sigma))},
                 {"pt_min_eigenvalue", round_sig(min_eigenvalue(partial_transpose(sigma, rho.layout(), cut.b())))},
                 {"trace", round_sig(sigma.trace().real())}}}};
  return out;
}

Json catphase(int n, std::span<const double> phis) {
  if (n < 2) throw ValidationError("catphase: n must be >= 2");
  const DensityMatrix reference = phase_cat(n, 0.0);
  Json rows = Json::array();
  for (double phi : phis) {
    const DensityMatrix state = phase_cat(n, phi);
    double worst = 0.0;
    for (int drop = 0; drop < n; ++drop) {
      SiteSet keep;
      for (int s = 0; s < n; ++s)
        if (s != drop) keep.push_back(s);
      worst = std::max(worst, trace_distance(partial_trace(state, keep), partial_trace(reference, keep)));
    }
    rows.push_back(Json{{"phi", round_sig(phi)},
                        {"max_marginal_distance", round_sig(worst)},
                        {"full_state_distance", round_sig(trace_distance(state, reference))}});
  }
  return Json{{"report", "catphase"}, {"n", n}, {"marginal_sites", n - 1}, {"rows", rows}};
}

namespace {

void flatten(const Json& value, const std::string& prefix, Json& row) {
  if (value.is_object()) {
    for (const auto& [key, v] : value.items()) flatten(v, prefix.empty() ? key : prefix + "." + key, row);
  } else if (value.is_array()) {
    std::string joined;
    for (const auto& v : value) joined += (joined.empty() ? "" : " ") + (v.is_string() ? v.get<std::string>() : v.dump());
    row[prefix] = joined;
  } else {
    row[prefix] = value;
  }
}

std::string cell(const Json& v) {
  if (v.is_null()) return "";
  std::string s = v.is_string() ? v.get<std::string>() : v.dump();
  if (s.find_first_of(",\"\n") != std::string::npos) {
    std::string quoted = "\"";
    for (char c : s) quoted += c == '"' ? std::string("\"\"") : std::string(1, c);
    return quoted + "\"";
  }
  return s;
}

}  // namespace

std::string to_csv(const Json& report) {
  std::vector<Json> rows;
  const std::string kind = report.value("report", "");
  auto take = [&](const Json& list, const Json& extra) {
    for (const auto& item : list) {
      Json row = Json::object();
      flatten(extra, "", row);
      flatten(item, "", row);
      rows.push_back(std::move(row));
    }
  };
  if (kind == "kmeasure") {
    take(report.at("per_subset"), Json::object());
    for (const auto& item : report.at("certified_zero")) {
      Json row = Json::object();
      flatten(item, "", row);
      rows.push_back(std::move(row));
    }
  } else if (kind == "wk") {
    take(report.at("terms"), Json{{"n", report.at("n")}});
  } else if (kind == "gridk" && report.contains("verify")) {
    take(report.at("verify").at("rows"), Json::object());
  } else if (report.contains("rows") && report.at("rows").is_array()) {
    take(report.at("rows"), Json::object());
  } else {
    Json row = Json::object();
    flatten(report, "", row);
    rows.push_back(std::move(row));
  }

  std::vector<std::string> header;
  for (const auto& row : rows)
    for (const auto& [key, v] : row.items())
      if (std::find(header.begin(), header.end(), key) == header.end()) header.push_back(key);
  std::ostringstream out;
  for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
  out << "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << (row.contains(header[i]) ? cell(row[header[i]]) : "");
    out << "\n";
  }
  return out.str();
}

bool converged(const Json& report) {
  return !(report.contains("converged") && report["converged"].is_boolean() && !report["converged"].get<bool>());
}

}  // namespace reports
}  // namespace kalaik
