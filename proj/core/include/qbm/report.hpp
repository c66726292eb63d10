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


#pragma once

/// Deterministic CSV and JSON artifacts for each CLI subcommand.

#include <nlohmann/json.hpp>
#include <string>

#include "qbm/config.hpp"
#include "qbm/positivity.hpp"
#include "qbm/scenario.hpp"

namespace qbm {

inline constexpr int kSchemaVersion = 1;

using Json = nlohmann::ordered_json;

/// Serialises with fixed key order and shortest round-trip numbers.
std::string dump_json(const Json& value, int indent = 2);

/// Finite doubles become numbers; non-finite ones the strings inf, -inf,
/// nan.
Json json_number(double value);

Json to_json(const RunConfig& config);
Json to_json(const CoefficientSet& coeffs);
Json to_json(const TheoremReport& report);
Json to_json(const CorollaryReport& report);
Json to_json(const GaussianState& state);
Json to_json(const UncertaintyCheck& check);

QuadratureOptions quadrature_options(const RunConfig& config);

/// t, A, dA, d2A, R2, one_minus_R2.
std::string kernel_csv(const RunConfig& config);

/// t, X, Xdot, Y, R2, err_X, err_Xdot, err_Y for config.model.
std::string coeffs_csv(const RunConfig& config);

/// t, q2, p2, qp_sym, det_check with det_check = q2 p2 - qp_sym^2 / 4 -
/// hbar^2 / 4 and qp_sym = <qp + pq>(t).
std::string moments_csv(const RunConfig& config);

/// One JSON object per grid time, newline separated.
std::string check_jsonl(const RunConfig& config);

/// Flattened margins of check_jsonl.
std::string check_csv(const RunConfig& config);

/// Numeric, leading-order and ratio columns for config.model, which must
/// be high_t or uniform.
std::string asymptotics_csv(const RunConfig& config);

struct ScenarioArtifacts {
  ScenarioResult result;
  std::string report_json;
  std::string margins_csv;
  std::string plotdata_csv;
};

ScenarioArtifacts scenario_artifacts(const RunConfig& config);

}  // namespace qbm
