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


#include "qbm/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

#include "qbm/errors.hpp"
#include "qbm/format.hpp"
#include "qbm/gaussian.hpp"

namespace qbm {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value,
                            std::string_view expected) {
  throw ConfigError("key '" + std::string(key) + "': expected " +
                    std::string(expected) + ", got '" + std::string(value) +
                    "'");
}

double to_number(std::string_view key, std::string_view value) {
  double x = 0.0;
  if (!parse_double(value, x) || !std::isfinite(x)) {
    bad_value(key, value, "a finite number");
  }
  return x;
}

long to_integer(std::string_view key, std::string_view value) {
  double x = 0.0;
  if (!parse_double(value, x) || !std::isfinite(x) || x != std::floor(x) ||
      std::abs(x) > 1e9) {
    bad_value(key, value, "an integer");
  }
  return static_cast<long>(x);
}

OccupationModel to_model(std::string_view key, std::string_view value) {
  try {
    return parse_occupation_model(value);
  } catch (const Error&) {
    bad_value(key, value, "one of exact, high_t, uniform");
  }
}

struct Field {
  std::string_view key;
  std::function<void(RunConfig&, std::string_view)> set;
  std::function<std::string(const RunConfig&)> get;
};

Field number_field(std::string_view key, double RunConfig::*member) {
  return {key,
          [key, member](RunConfig& c, std::string_view v) {
            c.*member = to_number(key, v);
          },
          [member](const RunConfig& c) { return format_double(c.*member); }};
}

Field param_field(std::string_view key, double PhysicalParams::*member) {
  return {key,
          [key, member](RunConfig& c, std::string_view v) {
            c.params.*member = to_number(key, v);
          },
          [member](const RunConfig& c) {
            return format_double(c.params.*member);
          }};
}

const std::vector<Field>& fields() {
  static const std::vector<Field> table = [] {
    std::vector<Field> f;
    f.push_back(param_field("m", &PhysicalParams::m));
    f.push_back(param_field("omega", &PhysicalParams::omega));
    f.push_back(param_field("gamma", &PhysicalParams::gamma));
    f.push_back(param_field("alpha", &PhysicalParams::alpha));
    f.push_back(param_field("T", &PhysicalParams::T));
    f.push_back(param_field("hbar", &PhysicalParams::hbar));
    f.push_back(param_field("k", &PhysicalParams::k));
    f.push_back({"model",
                 [](RunConfig& c, std::string_view v) {
                   c.model = to_model("model", v);
                 },
                 [](const RunConfig& c) {
                   return std::string(to_string(c.model));
                 }});
    f.push_back({"comparison",
                 [](RunConfig& c, std::string_view v) {
                   c.comparison = to_model("comparison", v);
                 },
                 [](const RunConfig& c) {
                   return std::string(to_string(c.comparison));
                 }});
    f.push_back({"grid",
                 [](RunConfig& c, std::string_view v) {
                   if (v == "linear") {
                     c.grid.kind = GridKind::Linear;
                   } else if (v == "log") {
                     c.grid.kind = GridKind::Log;
                   } else {
                     bad_value("grid", v, "linear or log");
                   }
                 },
                 [](const RunConfig& c) {
                   return std::string(to_string(c.grid.kind));
                 }});
    f.push_back({"t_start",
                 [](RunConfig& c, std::string_view v) {
                   c.grid.start = to_number("t_start", v);
                 },
                 [](const RunConfig& c) {
                   return format_double(c.grid.start);
                 }});
    f.push_back({"t_stop",
                 [](RunConfig& c, std::string_view v) {
                   c.grid.stop = to_number("t_stop", v);
                 },
                 [](const RunConfig& c) {
                   return format_double(c.grid.stop);
                 }});
    f.push_back({"t_count",
                 [](RunConfig& c, std::string_view v) {
                   c.grid.count = static_cast<int>(to_integer("t_count", v));
                 },
                 [](const RunConfig& c) {
                   return std::to_string(c.grid.count);
                 }});
    f.push_back(number_field("tol", &RunConfig::tol));
    f.push_back(number_field("margin_factor", &RunConfig::margin_factor));
    f.push_back({"threads",
                 [](RunConfig& c, std::string_view v) {
                   const long n = to_integer("threads", v);
                   if (n < 0) bad_value("threads", v, "a count >= 0");
                   c.threads = static_cast<unsigned>(n);
                 },
                 [](const RunConfig& c) { return std::to_string(c.threads); }});
    f.push_back({"state",
                 [](RunConfig& c, std::string_view v) {
                   if (v == "chi") {
                     c.state = StateKind::Chi;
                   } else if (v == "ground") {
                     c.state = StateKind::Ground;
                   } else if (v == "custom") {
                     c.state = StateKind::Custom;
                   } else {
                     bad_value("state", v, "chi, ground or custom");
                   }
                 },
                 [](const RunConfig& c) {
                   return std::string(to_string(c.state));
                 }});
    f.push_back(number_field("state_q2", &RunConfig::state_q2));
    f.push_back(number_field("state_p2", &RunConfig::state_p2));
    f.push_back(number_field("state_qp", &RunConfig::state_qp));
    f.push_back({"out",
                 [](RunConfig& c, std::string_view v) {
                   if (v.empty()) bad_value("out", v, "a directory path");
                   c.out = std::string(v);
                 },
                 [](const RunConfig& c) { return c.out; }});
    return f;
  }();
  return table;
}

const Field& field(std::string_view key) {
  for (const Field& f : fields()) {
    if (f.key == key) return f;
  }
  throw ConfigError("unknown key '" + std::string(key) + "'");
}

}  // namespace

std::string_view to_string(GridKind kind) noexcept {
  return kind == GridKind::Linear ? "linear" : "log";
}

std::string_view to_string(StateKind kind) noexcept {
  switch (kind) {
    case StateKind::Chi:
      return "chi";
    case StateKind::Ground:
      return "ground";
    case StateKind::Custom:
      return "custom";
  }
  return "chi";
}

std::vector<double> GridSpec::points() const {
  std::vector<double> p(static_cast<std::size_t>(count));
  const double last = count - 1;
  for (int i = 0; i < count; ++i) {
    const double u = i / last;
    if (kind == GridKind::Linear) {
      p[i] = start + (stop - start) * u;
    } else {
      p[i] = start * std::pow(stop / start, u);
    }
  }
  p.front() = start;
  p.back() = stop;
  return p;
}

void RunConfig::validate() const {
  if (grid.count < 2) {
    throw ConfigError("key 't_count': expected an integer >= 2");
  }
  if (grid.kind == GridKind::Log && !(grid.start > 0.0)) {
    throw ConfigError("key 't_start': log grids need t_start > 0");
  }
  if (!(grid.start >= 0.0)) {
    throw ConfigError("key 't_start': expected t_start >= 0");
  }
  if (!(grid.stop > grid.start)) {
    throw ConfigError("key 't_stop': expected t_stop > t_start");
  }
  if (!(tol > 0.0) || !(tol < 1.0)) {
    throw ConfigError("key 'tol': expected 0 < tol < 1");
  }
  if (!(margin_factor > 0.0)) {
    throw ConfigError("key 'margin_factor': expected a positive number");
  }
  try {
    params.validate();
  } catch (const Error& e) {
    throw ConfigError(std::string("invalid parameters: ") + e.what());
  }
  if (state == StateKind::Custom) {
    try {
      GaussianState::centered(state_q2, state_p2, state_qp)
          .validate(params.hbar);
    } catch (const Error& e) {
      throw ConfigError(std::string("keys 'state_q2', 'state_p2', "
                                    "'state_qp': ") +
                        e.what());
    }
  }
}

const std::vector<std::string_view>& config_keys() {
  static const std::vector<std::string_view> keys = [] {
    std::vector<std::string_view> k;
    for (const Field& f : fields()) k.push_back(f.key);
    return k;
  }();
  return keys;
}

void set(RunConfig& config, std::string_view key, std::string_view value) {
  field(key).set(config, trim(value));
}

std::string get(const RunConfig& config, std::string_view key) {
  return field(key).get(config);
}

std::vector<std::pair<std::string, std::string>> entries(
    const RunConfig& config) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const Field& f : fields()) {
    out.emplace_back(std::string(f.key), f.get(config));
  }
  return out;
}

RunConfig parse_config(std::string_view text, std::string_view source,
                       RunConfig base) {
  std::vector<std::string_view> seen;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{}
                                        : text.substr(nl + 1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    const std::string where =
        std::string(source) + ":" + std::to_string(line_no) + ": ";
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(where + "expected 'key = value', got '" +
                        std::string(line) + "'");
    }
    const std::string_view key = trim(line.substr(0, eq));
    std::string_view value = trim(line.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
      value = value.substr(1, value.size() - 2);
    }
    try {
      const Field& f = field(key);
      if (std::find(seen.begin(), seen.end(), f.key) != seen.end()) {
        throw ConfigError("key '" + std::string(key) + "' given twice");
      }
      seen.push_back(f.key);
      f.set(base, value);
    } catch (const ConfigError& e) {
      throw ConfigError(where + e.what());
    }
  }
  return base;
}

RunConfig load_config(const std::filesystem::path& path, RunConfig base) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path.string(), std::move(base));
}

}  // namespace qbm
