// Copyright 2026 The qbm Authors
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


#include "qbm/report.hpp"

#include <cmath>
#include <limits>
#include <optional>

#include "qbm/asymptotics.hpp"
#include "qbm/errors.hpp"
#include "qbm/format.hpp"
#include "qbm/kernel.hpp"
#include "qbm/parallel.hpp"

namespace qbm {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void dump(const Json& v, int indent, int depth, std::string& out) {
  const auto newline = [&](int d) {
    if (indent < 0) return;
    out += '\n';
    out.append(static_cast<std::size_t>(indent * d), ' ');
  };
  switch (v.type()) {
    case Json::value_t::object: {
      if (v.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (auto it = v.begin(); it != v.end(); ++it) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        out += Json(it.key()).dump();
        out += indent < 0 ? ":" : ": ";
        dump(it.value(), indent, depth + 1, out);
      }
      newline(depth);
      out += '}';
      return;
    }
    case Json::value_t::array: {
      if (v.empty()) {
        out += "[]";
        return;
      }
      out += '[';
      bool first = true;
      for (const Json& e : v) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        dump(e, indent, depth + 1, out);
      }
      newline(depth);
      out += ']';
      return;
    }
    case Json::value_t::number_float:
      out += format_double(v.get<double>());
      return;
    default:
      out += v.dump();
  }
}

Json complex_json(std::complex<double> z) {
  return Json::array({json_number(z.real()), json_number(z.imag())});
}

std::vector<CoefficientSet> grid_coefficients(const RunConfig& config,
                                              OccupationModel model) {
  const std::vector<double> grid = config.grid.points();
  const QuadratureOptions opts = quadrature_options(config);
  return parallel_map(
      grid.size(),
      [&](std::size_t i) {
        return coefficients(grid[i], model, config.params, opts);
      },
      config.threads);
}

/// Initial state for `moments` and `check`; empty when the constructed
/// state does not exist at this time.
std::optional<GaussianState> initial_state(const RunConfig& config,
                                           const MapCoefficients& map) {
  switch (config.state) {
    case StateKind::Ground:
      return GaussianState::ground_state(config.params);
    case StateKind::Custom:
      return GaussianState::centered(config.state_q2, config.state_p2,
                                     config.state_qp);
    case StateKind::Chi:
      try {
        return build_chi(map, config.params);
      } catch (const NoViolationError&) {
        return std::nullopt;
      }
  }
  return std::nullopt;
}

Json scan_point_json(const ScanPoint& sp) {
  Json j;
  j["t"] = sp.t;
  j["d1"] = json_number(sp.d1);
  j["err_d1"] = json_number(sp.err_d1);
  j["B"] = json_number(sp.B);
  j["err_B"] = json_number(sp.err_B);
  j["det"] = json_number(sp.det);
  j["bound"] = json_number(sp.bound);
  j["err_det"] = json_number(sp.err_det);
  j["ratio_d1"] = json_number(sp.ratio_d1);
  j["ratio_B"] = json_number(sp.ratio_B);
  j["ratio_det"] = json_number(sp.ratio_det);
  j["ratio_bound"] = json_number(sp.ratio_bound);
  j["qualifies"] = sp.qualifies;
  return j;
}

Json model_point_json(const ModelPoint& mp) {
  Json j;
  j["t"] = mp.t;
  j["coefficients"] = to_json(mp.coeffs);
  j["gap31"] = json_number(mp.gap31);
  j["corollary"] = to_json(mp.corollary);
  j["theorem"] = mp.theorem ? to_json(*mp.theorem) : Json(nullptr);
  return j;
}

}  // namespace

std::string dump_json(const Json& value, int indent) {
  std::string out;
  dump(value, indent, 0, out);
  return out;
}

Json json_number(double value) {
  if (std::isfinite(value)) return value;
  return format_double(value);
}

QuadratureOptions quadrature_options(const RunConfig& config) {
  QuadratureOptions o;
  o.rel_tol = config.tol;
  return o;
}

Json to_json(const RunConfig& config) {
  // The output directory does not affect results and is left out so that
  // reports written to different places compare equal.
  Json j = Json::object();
  for (const auto& [key, value] : entries(config)) {
    if (key == "out") continue;
    double x = 0.0;
    if (parse_double(value, x)) {
      j[key] = x;
    } else {
      j[key] = value;
    }
  }
  return j;
}

Json to_json(const CoefficientSet& c) {
  Json j;
  j["t"] = c.t;
  j["model"] = to_string(c.model);
  j["X"] = json_number(c.X);
  j["Xdot"] = json_number(c.Xdot);
  j["Y"] = json_number(c.Y);
  j["R2"] = json_number(c.R2);
  j["one_minus_R2"] = json_number(c.one_minus_R2);
  j["fluct_det"] = json_number(c.fluct_det);
  j["err_X"] = json_number(c.err_X);
  j["err_Xdot"] = json_number(c.err_Xdot);
  j["err_Y"] = json_number(c.err_Y);
  j["err_det"] = json_number(c.err_det);
  j["panels"] = c.panels;
  return j;
}

Json to_json(const TheoremReport& r) {
  Json j;
  j["t"] = r.t;
  j["in_scope"] = r.in_scope;
  j["edge_b_zero"] = r.edge_b_zero;
  j["all_hold"] = r.all_hold;
  j["d1"] = json_number(r.d1);
  j["s_minus"] = json_number(r.s_minus);
  j["s_plus"] = json_number(r.s_plus);
  Json conds = Json::object();
  for (const ConditionResult& c : r.conditions) {
    Json cj;
    cj["holds"] = c.holds;
    cj["value"] = json_number(c.value);
    cj["threshold"] = json_number(c.threshold);
    cj["margin"] = json_number(c.margin);
    conds[std::string(c.name)] = cj;
  }
  j["conditions"] = conds;
  if (r.witness) {
    const Witness& w = *r.witness;
    Json wj;
    wj["w"] = json_number(to_double(w.w));
    wj["lambda"] = json_number(to_double(w.lambda));
    wj["beta_bar"] = json_number(to_double(w.beta_bar));
    wj["I_value"] = json_number(to_double(w.I_value));
    wj["residual"] = json_number(to_double(w.residual));
    wj["residual_scale"] = json_number(to_double(w.residual_scale));
    j["witness"] = wj;
  } else {
    j["witness"] = nullptr;
  }
  j["uncertainty_lhs"] = json_number(r.uncertainty_lhs);
  j["uncertainty_rhs"] = json_number(r.uncertainty_rhs);
  return j;
}

Json to_json(const CorollaryReport& r) {
  Json j;
  j["t"] = r.t;
  j["sigma"] = json_number(r.sigma);
  j["eta"] = json_number(r.eta);
  j["xi"] = json_number(r.xi);
  j["zeta"] = complex_json(r.zeta);
  j["gram"] = json_number(r.gram);
  j["passes"] = r.passes;
  j["margins"] = {{"sigma", json_number(r.margin_sigma)},
                  {"eta", json_number(r.margin_eta)},
                  {"xi", json_number(r.margin_xi)},
                  {"gram", json_number(r.margin_gram)}};
  Json pairs = Json::array();
  for (const LindbladPair& p : r.decomposition) {
    pairs.push_back({{"a", complex_json(p.a)}, {"b", complex_json(p.b)}});
  }
  j["decomposition"] = pairs;
  return j;
}

Json to_json(const GaussianState& s) {
  Json j;
  j["mean_q"] = json_number(to_double(s.mean_q));
  j["mean_p"] = json_number(to_double(s.mean_p));
  j["q2"] = json_number(to_double(s.q2()));
  j["p2"] = json_number(to_double(s.p2()));
  j["qp"] = json_number(to_double(s.qp_anti()));
  return j;
}

Json to_json(const UncertaintyCheck& u) {
  Json j;
  j["lhs"] = json_number(to_double(u.lhs));
  j["rhs"] = json_number(to_double(u.rhs));
  j["rhs_strong"] = json_number(to_double(u.rhs_strong));
  j["lhs_minus_rhs_strong"] = json_number(to_double(u.lhs - u.rhs_strong));
  j["violated"] = u.violated;
  return j;
}

std::string kernel_csv(const RunConfig& config) {
  const Kernel kernel(config.params);
  CsvWriter csv({"t", "A", "dA", "d2A", "R2", "one_minus_R2"});
  for (const double t : config.grid.points()) {
    const KernelDerivatives d = kernel.derivatives(t);
    const Dissipation r = kernel.dissipation(t);
    csv.cell(t).cell(d.A).cell(d.dA).cell(d.d2A).cell(r.R2).cell(
        r.one_minus_R2);
    csv.end_row();
  }
  return csv.str();
}

std::string coeffs_csv(const RunConfig& config) {
  CsvWriter csv(
      {"t", "X", "Xdot", "Y", "R2", "err_X", "err_Xdot", "err_Y"});
  for (const CoefficientSet& c : grid_coefficients(config, config.model)) {
    csv.cell(c.t).cell(c.X).cell(c.Xdot).cell(c.Y).cell(c.R2);
    csv.cell(c.err_X).cell(c.err_Xdot).cell(c.err_Y);
    csv.end_row();
  }
  return csv.str();
}

std::string moments_csv(const RunConfig& config) {
  CsvWriter csv({"t", "q2", "p2", "qp_sym", "det_check"});
  const Real h = config.params.hbar;
  for (const CoefficientSet& c : grid_coefficients(config, config.model)) {
    const MapCoefficients map = associate_theorem_params(c);
    const std::optional<GaussianState> state = initial_state(config, map);
    csv.cell(c.t);
    if (!state) {
      csv.cell(kNaN).cell(kNaN).cell(kNaN).cell(kNaN);
    } else {
      const EvolvedMoments ev = propagate_moments(
          *state, map, config.params.m, config.params.hbar);
      const Real det =
          ev.q2 * ev.p2 - ev.qp_anti * ev.qp_anti / 4 - h * h / 4;
      csv.cell(to_double(ev.q2)).cell(to_double(ev.p2));
      csv.cell(to_double(ev.qp_anti)).cell(to_double(det));
    }
    csv.end_row();
  }
  return csv.str();
}

namespace {

struct CheckRecord {
  CoefficientSet coeffs;
  double gap = 0.0;
  std::optional<GaussianState> state;
  std::optional<TheoremReport> theorem;
  CorollaryReport corollary;
};

std::vector<CheckRecord> check_records(const RunConfig& config) {
  const PhysicalParams& p = config.params;
  std::vector<CheckRecord> out;
  for (const CoefficientSet& c : grid_coefficients(config, config.model)) {
    CheckRecord r;
    r.coeffs = c;
    r.gap = gap31(c, p.hbar);
    const MapCoefficients map = associate_theorem_params(c);
    r.state = initial_state(config, map);
    if (r.state) {
      r.theorem = theorem_check(*r.state, map, p.m, p.hbar);
      r.theorem->t = c.t;
    }
    r.corollary = corollary_check(associate_corollary_params(c, p.m, p.hbar));
    r.corollary.t = c.t;
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace

std::string check_jsonl(const RunConfig& config) {
  std::string out;
  for (const CheckRecord& r : check_records(config)) {
    Json j;
    j["t"] = r.coeffs.t;
    j["model"] = to_string(config.model);
    j["coefficients"] = to_json(r.coeffs);
    j["gap31"] = json_number(r.gap);
    j["state"] = r.state ? to_json(*r.state) : Json(nullptr);
    j["theorem"] = r.theorem ? to_json(*r.theorem) : Json(nullptr);
    j["corollary"] = to_json(r.corollary);
    out += dump_json(j, -1);
    out += '\n';
  }
  return out;
}

std::string check_csv(const RunConfig& config) {
  std::vector<std::string> header = {"t", "model", "X", "Xdot", "Y",
                                     "one_minus_R2", "gap31",
                                     "theorem_available"};
  for (const char* name :
       {"d1_positive", "B_positive", "purity", "q2_between_roots",
        "roots_well_defined", "fluctuation_bound"}) {
    header.push_back(std::string(name) + "_holds");
    header.push_back(std::string(name) + "_margin");
  }
  for (const char* name :
       {"theorem_all_hold", "I_value", "sigma", "eta", "xi", "gram",
        "margin_gram", "corollary_passes"}) {
    header.emplace_back(name);
  }
  CsvWriter csv(header);
  for (const CheckRecord& r : check_records(config)) {
    const CoefficientSet& c = r.coeffs;
    csv.cell(c.t).cell(to_string(config.model)).cell(c.X).cell(c.Xdot);
    csv.cell(c.Y).cell(c.one_minus_R2).cell(r.gap);
    csv.cell(r.theorem.has_value());
    for (std::size_t i = 0; i < 6; ++i) {
      if (r.theorem) {
        csv.cell(r.theorem->conditions[i].holds);
        csv.cell(r.theorem->conditions[i].margin);
      } else {
        csv.cell(false).cell(kNaN);
      }
    }
    csv.cell(r.theorem && r.theorem->all_hold);
    csv.cell(r.theorem && r.theorem->witness
                 ? to_double(r.theorem->witness->I_value)
                 : kNaN);
    const CorollaryReport& k = r.corollary;
    csv.cell(k.sigma).cell(k.eta).cell(k.xi).cell(k.gram).cell(k.margin_gram);
    csv.cell(k.passes);
    csv.end_row();
  }
  return csv.str();
}

std::string asymptotics_csv(const RunConfig& config) {
  if (config.model == OccupationModel::Exact) {
    throw ConfigError(
        "key 'model': asymptotics needs high_t or uniform, got exact");
  }
  const PhysicalParams& p = config.params;
  std::vector<std::string> header = {"model", "t"};
  for (const char* q : {"X", "Xdot", "Y", "one_minus_R2", "gap31"}) {
    header.emplace_back(q);
    header.push_back(std::string(q) + "_lead");
    header.push_back(std::string(q) + "_ratio");
  }
  CsvWriter csv(header);
  for (const CoefficientSet& c : grid_coefficients(config, config.model)) {
    const AsymptoticSet lead = config.model == OccupationModel::HighT
                                   ? hight_leading(c.t, p)
                                   : uniform_leading(c.t, p);
    csv.cell(to_string(config.model)).cell(c.t);
    const double g = gap31(c, p.hbar);
    for (const auto& [num, ld] :
         {std::pair{c.X, lead.X_lead}, std::pair{c.Xdot, lead.Xdot_lead},
          std::pair{c.Y, lead.Y_lead},
          std::pair{c.one_minus_R2, lead.one_minus_R2_lead},
          std::pair{g, lead.gap31_lead}}) {
      csv.cell(num).cell(ld).cell(num / ld);
    }
    csv.end_row();
  }
  return csv.str();
}

ScenarioArtifacts scenario_artifacts(const RunConfig& config) {
  ScenarioOptions opts;
  opts.quadrature = quadrature_options(config);
  opts.margin_factor = config.margin_factor;
  opts.comparison = config.comparison;
  opts.threads = config.threads;
  const std::vector<double> grid = config.grid.points();

  ScenarioArtifacts art;
  art.result = run_scenario(config.params, grid, opts);
  const ScenarioResult& r = art.result;
  const std::string cmp(to_string(r.comparison));

  Json res;
  res["t_prime"] = r.t_prime ? Json(*r.t_prime) : Json(nullptr);
  res["violation_found"] = r.t_prime.has_value();
  res["chi"] = r.chi ? to_json(*r.chi) : Json(nullptr);
  res["theorem"] = r.theorem ? to_json(*r.theorem) : Json(nullptr);
  res["uncertainty"] =
      r.uncertainty ? to_json(*r.uncertainty) : Json(nullptr);
  res["comparison_model"] = cmp;
  res["corollary_all_pass"] = r.corollary_all_pass;
  res["mutual_exclusion"] = r.mutual_exclusion;
  Json search;
  search["qualifying_index"] =
      r.search.index ? Json(*r.search.index) : Json(nullptr);
  search["best_index"] = r.search.best_index;
  search["best_point"] = scan_point_json(r.search.scan[r.search.best_index]);
  Json scan = Json::array();
  for (const ScanPoint& sp : r.search.scan) scan.push_back(scan_point_json(sp));
  search["points"] = scan;
  res["search"] = search;
  Json ht = Json::array();
  for (const ModelPoint& mp : r.high_t) ht.push_back(model_point_json(mp));
  res["high_t"] = ht;
  Json cm = Json::array();
  for (const ModelPoint& mp : r.corollary_model) {
    cm.push_back(model_point_json(mp));
  }
  res["comparison"] = cm;

  Json report;
  report["schema_version"] = kSchemaVersion;
  report["config"] = to_json(config);
  report["result"] = res;
  art.report_json = dump_json(report) + "\n";

  CsvWriter margins({"t", "d1", "err_d1", "ratio_d1", "B", "err_B",
                     "ratio_B", "det", "bound", "err_det", "ratio_det",
                     "ratio_bound", "qualifies", cmp + "_sigma",
                     cmp + "_eta", cmp + "_xi", cmp + "_gram",
                     cmp + "_margin_gram", cmp + "_passes"});
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const ScanPoint& sp = r.search.scan[i];
    const CorollaryReport& k = r.corollary_model[i].corollary;
    margins.cell(sp.t).cell(sp.d1).cell(sp.err_d1).cell(sp.ratio_d1);
    margins.cell(sp.B).cell(sp.err_B).cell(sp.ratio_B);
    margins.cell(sp.det).cell(sp.bound).cell(sp.err_det);
    margins.cell(sp.ratio_det).cell(sp.ratio_bound).cell(sp.qualifies);
    margins.cell(k.sigma).cell(k.eta).cell(k.xi).cell(k.gram);
    margins.cell(k.margin_gram).cell(k.passes);
    margins.end_row();
  }
  art.margins_csv = margins.str();

  CsvWriter plot({"t", "gap31_high_t", "gap31_" + cmp, "gap31_lead_high_t",
                  "one_minus_R2"});
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double t = grid[i];
    plot.cell(t).cell(r.high_t[i].gap31).cell(r.corollary_model[i].gap31);
    plot.cell(hight_leading(t, config.params).gap31_lead);
    plot.cell(r.high_t[i].coeffs.one_minus_R2);
    plot.end_row();
  }
  art.plotdata_csv = plot.str();
  return art;
}

}  // namespace qbm
