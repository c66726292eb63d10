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


// qbm command-line front end.

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "qbm/config.hpp"
#include "qbm/errors.hpp"
#include "qbm/format.hpp"
#include "qbm/report.hpp"

namespace {

enum ExitCode : int {
  kOk = 0,
  kOther = 1,
  kUsage = 2,
  kDomain = 3,
  kRegime = 4,
  kIntegration = 5,
  kConsistency = 6,
};

std::string key_help(std::string_view key) {
  static const std::map<std::string_view, std::string_view> text = {
      {"m", "oscillator mass"},
      {"omega", "oscillator frequency Omega"},
      {"gamma", "damping rate Gamma"},
      {"alpha", "bath cutoff alpha (alpha >= 3 gamma)"},
      {"T", "temperature (T >= 0)"},
      {"hbar", "reduced Planck constant"},
      {"k", "Boltzmann constant"},
      {"model", "occupation model: exact, high_t, uniform"},
      {"comparison", "scenario comparison model: exact or uniform"},
      {"grid", "time grid spacing: linear or log"},
      {"t_start", "first grid time"},
      {"t_stop", "last grid time"},
      {"t_count", "number of grid times (>= 2)"},
      {"tol", "relative quadrature tolerance"},
      {"margin_factor", "required value / error ratio for t'"},
      {"threads", "worker threads, 0 = hardware concurrency"},
      {"state", "initial state for moments/check: chi, ground, custom"},
      {"state_q2", "custom <q^2>_V"},
      {"state_p2", "custom <p^2>_V"},
      {"state_qp", "custom <qp + pq>_V"},
      {"out", "scenario output directory"},
  };
  const auto it = text.find(key);
  const std::string_view what = it == text.end() ? "" : it->second;
  return std::string(what) + " [default " + qbm::get(qbm::RunConfig{}, key) +
         "]";
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw qbm::Error("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw qbm::Error("failed writing '" + path.string() + "'");
}

void emit(const std::string& text, const std::string& output) {
  if (output.empty() || output == "-") {
    std::cout << text;
  } else {
    write_file(output, text);
  }
}

int run(int argc, char** argv) {
  CLI::App app{
      "Quantum Brownian motion coefficients and positivity checks.\n"
      "Settings come from built-in defaults, then --config, then flags."};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  std::string config_path;
  std::string output;
  bool csv = false;
  std::map<std::string, std::string> overrides;

  auto* kernel = app.add_subcommand(
      "kernel", "CSV of t, A, dA, d2A, R2, one_minus_R2 on the grid");
  auto* coeffs = app.add_subcommand(
      "coeffs", "CSV of X, Xdot, Y, R2 and error estimates on the grid");
  auto* moments = app.add_subcommand(
      "moments", "CSV of propagated second moments on the grid");
  auto* check = app.add_subcommand(
      "check", "JSON lines with theorem and corollary reports per time");
  auto* asym = app.add_subcommand(
      "asymptotics", "CSV of numeric vs leading-order small-t values");
  auto* scenario = app.add_subcommand(
      "scenario", "Violation and positivity scenario; writes report.json, "
                  "margins.csv and plotdata.csv into --out");

  for (CLI::App* sub : {kernel, coeffs, moments, check, asym, scenario}) {
    sub->add_option("--config", config_path, "key = value config file")
        ->check(CLI::ExistingFile);
    for (std::string_view key : qbm::config_keys()) {
      const std::string k(key);
      sub->add_option_function<std::string>(
          "--" + k,
          [&overrides, k](const std::string& v) { overrides[k] = v; },
          key_help(key));
    }
    if (sub != scenario) {
      sub->add_option("-o,--output", output, "output file (default stdout)");
    }
  }
  check->add_flag("--csv", csv, "flatten margins to CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  qbm::RunConfig config;
  if (!config_path.empty()) config = qbm::load_config(config_path);
  for (const auto& [key, value] : overrides) {
    try {
      qbm::set(config, key, value);
    } catch (const qbm::ConfigError& e) {
      throw qbm::ConfigError(std::string("--") + key + ": " + e.what());
    }
  }
  config.validate();

  if (kernel->parsed()) {
    emit(qbm::kernel_csv(config), output);
  } else if (coeffs->parsed()) {
    emit(qbm::coeffs_csv(config), output);
  } else if (moments->parsed()) {
    emit(qbm::moments_csv(config), output);
  } else if (check->parsed()) {
    emit(csv ? qbm::check_csv(config) : qbm::check_jsonl(config), output);
  } else if (asym->parsed()) {
    emit(qbm::asymptotics_csv(config), output);
  } else if (scenario->parsed()) {
    const qbm::ScenarioArtifacts art = qbm::scenario_artifacts(config);
    const std::filesystem::path dir = config.out;
    std::filesystem::create_directories(dir);
    write_file(dir / "report.json", art.report_json);
    write_file(dir / "margins.csv", art.margins_csv);
    write_file(dir / "plotdata.csv", art.plotdata_csv);
    const qbm::ScenarioResult& r = art.result;
    if (r.t_prime) {
      std::cout << "violation time t' = " << qbm::format_double(*r.t_prime)
                << ", witness I = "
                << qbm::format_double(
                       qbm::to_double(r.theorem->witness->I_value))
                << ", uncertainty violated: "
                << (r.uncertainty->violated ? "yes" : "no") << "\n";
    } else {
      std::cout << "no qualifying violation time on the grid\n";
    }
    std::cout << qbm::to_string(r.comparison) << " corollary passes on all "
              << r.grid.size()
              << " grid times: " << (r.corollary_all_pass ? "yes" : "no")
              << "\nwrote " << dir.string() << "\n";
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const qbm::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kUsage;
  } catch (const qbm::DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return kDomain;
  } catch (const qbm::RegimeError& e) {
    std::cerr << "regime error: " << e.what() << "\n";
    return kRegime;
  } catch (const qbm::IntegrationError& e) {
    std::cerr << "integration error: " << e.what() << "\n";
    return kIntegration;
  } catch (const qbm::ScopeError& e) {
    std::cerr << "scope error: " << e.what() << "\n";
    return kConsistency;
  } catch (const qbm::ConsistencyError& e) {
    std::cerr << "consistency error: " << e.what() << "\n";
    return kConsistency;
  } catch (const qbm::NotDecomposableError& e) {
    std::cerr << "not decomposable: " << e.what() << "\n";
    return kConsistency;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kOther;
  }
}
