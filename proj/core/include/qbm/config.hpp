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

/// Run configuration: a `key = value` text format with `#` comments.
/// Unknown keys and malformed values raise ConfigError naming the key.

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qbm/params.hpp"

namespace qbm {

enum class GridKind { Linear, Log };

std::string_view to_string(GridKind kind) noexcept;

struct GridSpec {
  GridKind kind = GridKind::Log;
  double start = 1e-9;
  double stop = 1e-2;
  int count = 57;

  /// Grid points; the endpoints are exact.
  std::vector<double> points() const;
};

/// Initial V-frame state used by `moments` and `check`.
enum class StateKind {
  Chi,     ///< The constructed violation state, rebuilt at each time.
  Ground,  ///< Oscillator ground state.
  Custom,  ///< state_q2, state_p2, state_qp.
};

std::string_view to_string(StateKind kind) noexcept;

struct RunConfig {
  PhysicalParams params;
  OccupationModel model = OccupationModel::HighT;
  OccupationModel comparison = OccupationModel::Uniform;
  GridSpec grid;
  double tol = 1e-8;
  double margin_factor = 10.0;
  unsigned threads = 0;  ///< 0 selects the hardware concurrency.
  StateKind state = StateKind::Chi;
  double state_q2 = 0.5;
  double state_p2 = 0.5;
  double state_qp = 0.0;  ///< <qp + pq>_V
  std::string out = "qbm_out";

  /// Throws ConfigError for invalid ranges and DomainError or RegimeError
  /// for invalid physical parameters.
  void validate() const;
};

/// Keys accepted by set() and the file parser, in canonical order.
const std::vector<std::string_view>& config_keys();

/// Assigns one key. Throws ConfigError for unknown keys or bad values.
void set(RunConfig& config, std::string_view key, std::string_view value);

/// Canonical value of one key as text.
std::string get(const RunConfig& config, std::string_view key);

/// All keys with their resolved values, in canonical order.
std::vector<std::pair<std::string, std::string>> entries(
    const RunConfig& config);

/// Parses text on top of `base`. `source` names the input in messages.
RunConfig parse_config(std::string_view text, std::string_view source,
                       RunConfig base = {});

RunConfig load_config(const std::filesystem::path& path,
                      RunConfig base = {});

}  // namespace qbm
