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


// Acceptance suite: one PASS/FAIL line per criterion. With an argument
// "ACn" only that criterion runs; the exit status is nonzero on any FAIL.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qbm/asymptotics.hpp"
#include "qbm/config.hpp"
#include "qbm/kernel.hpp"
#include "qbm/oracle.hpp"
#include "qbm/positivity.hpp"
#include "qbm/report.hpp"
#include "qbm/scenario.hpp"
#include "qbm/spectral.hpp"
#include "test_support.hpp"
#ifdef QBM_CLI_PATH
#include "cli_support.hpp"
#endif

namespace {

using namespace qbm;
using qbm::testing::default_params;
using qbm::testing::log_grid;
using qbm::testing::rel_diff;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (!pass) detail << "; ";
      detail << what;
      pass = false;
    }
  }
};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", x);
  return buf;
}

constexpr std::array<OccupationModel, 3> kModels = {
    OccupationModel::Exact, OccupationModel::HighT, OccupationModel::Uniform};

// Three parameter sets: the default fixture, a strongly damped and a
// weakly damped one, each with alpha >= 3 Gamma.
std::vector<PhysicalParams> fixture_params() {
  PhysicalParams strong;
  strong.alpha = 5.0;
  strong.gamma = 1.5;
  strong.omega = 2.0;
  strong.T = 10.0;
  PhysicalParams weak;
  weak.alpha = 20.0;
  weak.gamma = 0.05;
  weak.omega = 0.5;
  weak.T = 1000.0;
  weak.m = 2.0;
  return {default_params(), strong, weak};
}

std::vector<double> fixture_times(const PhysicalParams& p) {
  return {1e-4 / p.alpha, 1e-3 / p.alpha, 1e-2 / p.alpha, 0.1 / p.alpha,
          0.5 / p.alpha,  0.2,            1.0,            3.0};
}

Outcome ac1() {
  Outcome o;
  std::mt19937_64 rng(2026);
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const PhysicalParams p = qbm::testing::random_params(rng);
    o.require(p.alpha >= 3 * p.gamma && derived_constants(p).kappa > 0,
              "inadmissible random parameters");
    const KernelDerivatives d = kernel_derivatives(0.0, p);
    const Dissipation r = dissipation_R2(0.0, p);
    worst = std::max({worst, std::abs(d.A), std::abs(d.dA - 1.0),
                      std::abs(r.R2 - 1.0)});
  }
  o.require(worst <= 1e-12, "max deviation " + fmt(worst));
  if (o.pass) o.detail << "20 parameter sets, max deviation " << fmt(worst);
  return o;
}

struct GridPoint {
  int set;
  OccupationModel model;
  CoefficientSet c;
};

const std::vector<GridPoint>& fixture_coefficients() {
  static const std::vector<GridPoint> pts = [] {
    std::vector<GridPoint> v;
    const auto params = fixture_params();
    QuadratureOptions q;
    q.rel_tol = 1e-10;
    for (std::size_t s = 0; s < params.size(); ++s) {
      for (OccupationModel m : kModels) {
        for (double t : fixture_times(params[s])) {
          v.push_back({static_cast<int>(s), m,
                       coefficients(t, m, params[s], q)});
        }
      }
    }
    return v;
  }();
  return pts;
}

Outcome ac2() {
  Outcome o;
  const auto params = fixture_params();
  double worst = 0.0;
  for (const GridPoint& g : fixture_coefficients()) {
    const CoefficientSet r =
        oracle_coefficients(g.c.t, g.model, params[g.set]);
    const double d = std::max({rel_diff(g.c.X, r.X), rel_diff(g.c.Xdot, r.Xdot),
                               rel_diff(g.c.Y, r.Y)});
    if (d > 1e-6) {
      o.require(false, std::string(to_string(g.model)) + " set " +
                           std::to_string(g.set) + " t=" + fmt(g.c.t) +
                           " rel " + fmt(d));
    }
    worst = std::max(worst, d);
  }
  if (o.pass) {
    o.detail << fixture_coefficients().size()
             << " points, max relative difference " << fmt(worst);
  }
  return o;
}

Outcome ac3() {
  Outcome o;
  double worst = INFINITY;  // smallest normalised determinant
  for (const GridPoint& g : fixture_coefficients()) {
    const CoefficientSet& c = g.c;
    const double scale = 4 * c.X * c.Y + c.Xdot * c.Xdot;
    const double direct = 4 * c.X * c.Y - c.Xdot * c.Xdot;
    for (double det : {direct, c.fluct_det}) {
      worst = std::min(worst, det / scale);
      if (det < -1e-10 * scale) {
        o.require(false, std::string(to_string(g.model)) + " t=" + fmt(c.t) +
                             " det/scale " + fmt(det / scale));
      }
    }
  }
  if (o.pass) {
    o.detail << fixture_coefficients().size()
             << " points, min (4XY - Xdot^2)/(4XY + Xdot^2) = " << fmt(worst);
  }
  return o;
}

// Ratios and exponents on the grid t in [1e-4/alpha, 1e-2/alpha].
struct RatioStudy {
  std::vector<double> t;
  std::array<std::vector<double>, 4> numeric;  // X, Xdot, Y, 1-R^2
  std::array<std::vector<double>, 4> lead;
};

RatioStudy ratio_study(OccupationModel model, const PhysicalParams& p) {
  RatioStudy s;
  s.t = log_grid(1e-4 / p.alpha, 1e-2 / p.alpha, 9);
  for (double t : s.t) {
    const CoefficientSet c = coefficients(t, model, p);
    const AsymptoticSet a = model == OccupationModel::HighT
                                ? hight_leading(t, p)
                                : uniform_leading(t, p);
    const std::array<double, 4> n = {c.X, c.Xdot, c.Y, c.one_minus_R2};
    const std::array<double, 4> l = {a.X_lead, a.Xdot_lead, a.Y_lead,
                                     a.one_minus_R2_lead};
    for (int k = 0; k < 4; ++k) {
      s.numeric[k].push_back(n[k]);
      s.lead[k].push_back(l[k]);
    }
  }
  return s;
}

void check_ratios(const RatioStudy& s, const PhysicalParams& p, Outcome& o,
                  bool check_exponents) {
  static const std::array<const char*, 4> names = {"X", "Xdot", "Y",
                                                   "1-R^2"};
  static const std::array<double, 4> exponents = {4, 3, 2, 3};
  for (int k = 0; k < 4; ++k) {
    std::vector<double> ratios;
    for (std::size_t i = 0; i < s.t.size(); ++i) {
      ratios.push_back(s.numeric[k][i] / s.lead[k][i]);
    }
    // Ratio at alpha t = 1e-3 (grid midpoint).
    const double mid = ratios[s.t.size() / 2];
    o.require(std::abs(p.alpha * s.t[s.t.size() / 2] - 1e-3) < 1e-12,
              "grid midpoint is not alpha t = 1e-3");
    o.require(std::abs(mid - 1) <= 0.05,
              std::string(names[k]) + " ratio " + fmt(mid) + " at alpha t=1e-3");
    std::vector<double> decreasing_t(ratios.rbegin(), ratios.rend());
    o.require(approaches_one_monotonically(decreasing_t),
              std::string(names[k]) + " ratio not monotone toward 1");
    if (check_exponents) {
      const double slope = fit_power_law(s.t, s.numeric[k]).slope;
      o.require(std::abs(slope - exponents[k]) <= 0.05,
                std::string(names[k]) + " exponent " + fmt(slope));
    }
    if (k == 0) {
      o.detail << "X ratio " << fmt(ratios.front()) << " .. "
               << fmt(ratios.back());
    }
  }
}

Outcome ac4() {
  Outcome o;
  const PhysicalParams p = default_params();
  const RatioStudy s = ratio_study(OccupationModel::HighT, p);
  check_ratios(s, p, o, true);
  if (o.pass) {
    std::ostringstream e;
    for (int k = 0; k < 4; ++k) {
      e << (k ? ", " : "; exponents ")
        << fmt(fit_power_law(s.t, s.numeric[k]).slope);
    }
    o.detail << e.str();
  }
  return o;
}

Outcome ac5() {
  Outcome o;
  const PhysicalParams p = default_params();
  const RatioStudy s = ratio_study(OccupationModel::Uniform, p);
  check_ratios(s, p, o, false);
  // Y / (kappa hbar alpha^2 t^2 / pi) - pi kT / (hbar alpha) is
  // 3/2 - gamma - ln(alpha t); for X the constant is 7/4 - gamma.
  const double kappa = derived_constants(p).kappa;
  const double pref = kappa * p.hbar * p.alpha * p.alpha / std::numbers::pi;
  const double thermal = std::numbers::pi * p.kT() / (p.hbar * p.alpha);
  std::vector<double> lx, yX, yY;
  for (std::size_t i = 0; i < s.t.size(); ++i) {
    const double t = s.t[i];
    lx.push_back(std::log(p.alpha * t));
    yX.push_back(4 * s.numeric[0][i] / (pref * std::pow(t, 4)) - thermal);
    yY.push_back(s.numeric[2][i] / (pref * t * t) - thermal);
  }
  // Fit over the lower half of the grid where the o(1) remainder is small.
  const std::size_t h = s.t.size() / 2 + 1;
  const LinearFit fx = fit_line(std::span(lx).first(h), std::span(yX).first(h));
  const LinearFit fy = fit_line(std::span(lx).first(h), std::span(yY).first(h));
  o.require(std::abs(fx.slope + 1) <= 0.05,
            "X ln coefficient " + fmt(fx.slope));
  o.require(std::abs(fy.slope + 1) <= 0.05,
            "Y ln coefficient " + fmt(fy.slope));
  o.detail << "; ln(alpha t) coefficients X " << fmt(fx.slope) << ", Y "
           << fmt(fy.slope) << "; fitted constants X " << fmt(fx.intercept)
           << " (7/4 - gamma = " << fmt(1.75 - kEulerGamma) << "), Y "
           << fmt(fy.intercept) << " (3/2 - gamma = "
           << fmt(1.5 - kEulerGamma) << ")";
  return o;
}

Outcome ac6() {
  Outcome o;
  const PhysicalParams p = default_params();
  const std::vector<double> grid = log_grid(1e-4 / p.alpha, 1e-2 / p.alpha, 9);
  int bad_high = 0;
  double first_bad = 0.0;
  for (double t : grid) {
    const CoefficientSet h = coefficients(t, OccupationModel::HighT, p);
    const CoefficientSet u = coefficients(t, OccupationModel::Uniform, p);
    if (!(gap31(h, p.hbar) < 0)) {
      if (bad_high++ == 0) first_bad = t;
    }
    o.require(gap31(u, p.hbar) > 0, "uniform gap31 <= 0 at t=" + fmt(t));
  }
  if (bad_high) {
    o.require(false, "high_t gap31 >= 0 at " + std::to_string(bad_high) +
                         " of " + std::to_string(grid.size()) +
                         " grid times from alpha t=" +
                         fmt(p.alpha * first_bad));
  }
  const CoefficientSet small =
      coefficients(grid.front(), OccupationModel::HighT, p);
  const double ratio =
      gap31(small, p.hbar) / hight_leading(grid.front(), p).gap31_lead;
  o.require(std::abs(ratio - 1) <= 0.1,
            "ratio at smallest t " + fmt(ratio));
  // Temperature robustness below each temperature's crossover
  // t* = 5 alpha / (12 (kT)^2).
  for (double T : {1e2, 1e4, 1e6}) {
    PhysicalParams q = p;
    q.T = T;
    const double t = 1e-2 * 5 * q.alpha / (12 * q.kT() * q.kT());
    const CoefficientSet c = coefficients(t, OccupationModel::HighT, q);
    o.require(gap31(c, q.hbar) < 0, "high_t gap31 >= 0 at T=" + fmt(T));
  }
  o.detail << (o.pass ? "" : "; ") << "ratio at smallest t " << fmt(ratio)
           << "; high_t sign negative below crossover at T=1e2,1e4,1e6";
  return o;
}

const ScenarioResult& default_scenario() {
  static const ScenarioResult r =
      run_scenario(default_params(), GridSpec{}.points());
  return r;
}

Outcome ac7() {
  Outcome o;
  const ScenarioResult& r = default_scenario();
  if (!r.t_prime || !r.theorem) {
    o.require(false, "no violation time found");
    return o;
  }
  for (const ConditionResult& c : r.theorem->conditions) {
    o.require(c.holds && c.margin > 0,
              std::string(c.name) + " margin " + fmt(c.margin));
  }
  o.require(r.theorem->witness.has_value(), "no witness");
  if (!r.theorem->witness) return o;
  const Witness& w = *r.theorem->witness;
  o.require(w.I_value < 0, "I >= 0");
  o.require(abs(w.residual) < 1e-10 * w.residual_scale,
            "residual " + fmt(to_double(abs(w.residual) / w.residual_scale)));
  o.require(r.uncertainty && r.uncertainty->violated &&
                r.uncertainty->lhs < r.uncertainty->rhs_strong,
            "uncertainty product not violated");
  o.detail << "t' = " << fmt(*r.t_prime) << ", I = "
           << fmt(to_double(w.I_value)) << ", residual/scale "
           << fmt(to_double(abs(w.residual) / w.residual_scale))
           << ", lhs - rhs_strong "
           << fmt(to_double(r.uncertainty->lhs - r.uncertainty->rhs_strong));
  return o;
}

Outcome ac8() {
  Outcome o;
  const ScenarioResult& r = default_scenario();
  o.require(r.comparison == OccupationModel::Uniform,
            "comparison model is not uniform");
  double min_margin = INFINITY, worst_rec = 0.0;
  for (const ModelPoint& mp : r.corollary_model) {
    const CorollaryReport& c = mp.corollary;
    const bool ok = c.passes && c.margin_sigma > 0 && c.margin_eta > 0 &&
                    c.margin_xi > 0 && c.margin_gram > 0;
    o.require(ok, "corollary fails at t=" + fmt(mp.t));
    min_margin = std::min(min_margin, c.margin_gram);
    const std::vector<LindbladPair> pairs =
        lindblad_decompose(c.eta, c.xi, c.zeta);
    double eta = 0, xi = 0;
    std::complex<double> zeta;
    for (const LindbladPair& pr : pairs) {
      eta += std::norm(pr.a);
      xi += std::norm(pr.b);
      zeta += std::conj(pr.a) * pr.b;
    }
    const double scale = std::max({c.eta, c.xi, std::abs(c.zeta)});
    worst_rec = std::max({worst_rec, std::abs(eta - c.eta) / scale,
                          std::abs(xi - c.xi) / scale,
                          std::abs(zeta - c.zeta) / scale});
  }
  o.require(worst_rec <= 1e-12, "reconstruction error " + fmt(worst_rec));
  o.detail << r.corollary_model.size() << " grid times, min gram margin "
           << fmt(min_margin) << ", max reconstruction error "
           << fmt(worst_rec);
  return o;
}

Outcome ac9() {
  Outcome o;
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    CoefficientSet c;
    c.X = std::pow(10.0, -4 + 8 * u(rng));
    c.Y = std::pow(10.0, -4 + 8 * u(rng));
    c.Xdot = (2 * u(rng) - 1) * 2 * std::sqrt(c.X * c.Y);
    c.fluct_det = 4 * c.X * c.Y - c.Xdot * c.Xdot;
    c.one_minus_R2 = u(rng);
    c.R2 = 1 - c.one_minus_R2;
    const double m = std::pow(10.0, -1 + 2 * u(rng));
    const double hbar = std::pow(10.0, -1 + 2 * u(rng));
    const CorollaryParams cp = associate_corollary_params(c, m, hbar);
    const double lhs = 4 * (cp.eta * cp.xi - std::norm(cp.zeta));
    const double rhs = gap31(c, hbar);
    const double scale = 4 * c.X * c.Y + c.Xdot * c.Xdot +
                         std::pow(hbar * c.one_minus_R2, 2);
    worst = std::max(worst, std::abs(lhs - rhs) / scale);
  }
  o.require(worst <= 1e-12, "max relative difference " + fmt(worst));
  if (o.pass) o.detail << "1000 sets, max relative difference " << fmt(worst);
  return o;
}

Outcome ac10() {
  Outcome o;
#ifdef QBM_CLI_PATH
  const auto dir = qbm::testing::scratch_dir("acceptance_ac10");
  std::array<std::string, 2> reports;
  for (int run = 0; run < 2; ++run) {
    const auto out = dir / ("run" + std::to_string(run));
    const auto r = qbm::testing::run_cli(
        QBM_CLI_PATH, "scenario --out '" + out.string() + "'", dir);
    o.require(r.status == 0, "scenario exited " + std::to_string(r.status));
  }
  for (const char* f : {"report.json", "margins.csv", "plotdata.csv"}) {
    const std::string a = qbm::testing::read_file(dir / "run0" / f);
    const std::string b = qbm::testing::read_file(dir / "run1" / f);
    o.require(!a.empty() && a == b, std::string(f) + " differs");
  }
  std::filesystem::remove_all(dir);
  if (o.pass) o.detail << "report.json, margins.csv, plotdata.csv identical";
#else
  const ScenarioArtifacts a = scenario_artifacts(RunConfig{});
  const ScenarioArtifacts b = scenario_artifacts(RunConfig{});
  o.require(a.report_json == b.report_json && a.margins_csv == b.margins_csv &&
                a.plotdata_csv == b.plotdata_csv,
            "artifacts differ");
  if (o.pass) o.detail << "library artifacts identical (CLI not built)";
#endif
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::map<std::string, std::function<Outcome()>> criteria = {
      {"AC1", ac1}, {"AC2", ac2}, {"AC3", ac3}, {"AC4", ac4}, {"AC5", ac5},
      {"AC6", ac6}, {"AC7", ac7}, {"AC8", ac8}, {"AC9", ac9}, {"AC10", ac10}};
  std::vector<std::string> selected;
  for (int i = 1; i < argc; ++i) selected.emplace_back(argv[i]);
  if (selected.empty()) {
    for (int n = 1; n <= 10; ++n) selected.push_back("AC" + std::to_string(n));
  }
  bool all = true;
  for (const std::string& name : selected) {
    const auto it = criteria.find(name);
    if (it == criteria.end()) {
      std::cerr << "unknown criterion " << name << "\n";
      return 2;
    }
    Outcome o;
    try {
      o = it->second();
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    std::cout << name << " " << (o.pass ? "PASS" : "FAIL") << ": "
              << o.detail.str() << std::endl;
    all &= o.pass;
  }
  return all ? 0 : 1;
}
