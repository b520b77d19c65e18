// Copyright 2026 The entroflow Authors
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

// Run configuration parsing and result serialization for the CLI.
//
// Config files are either JSON (first non-blank character '{') or flat
// "key = value" lines with '#' comments. Keys:
//
//   partition          dims, e.g. "2,2,2" (JSON: [2,2,2])
//   cycles             positive integer                  (20)
//   dt                 positive real                     (1.0)
//   local_strength     nonnegative real                  (1.0)
//   coupling_strength  nonnegative real                  (1.0)
//   k_B                positive real                     (1.0)
//   seed               unsigned 64-bit base seed         (ENTROFLOW_SEED, else 0)
//   initial_state      pure-random | mixed-random | explicit
//   rank               rank for mixed-random             (1)
//   initial_matrix     JSON only: rows of numbers or [re, im] pairs
//   fixed_hamiltonian  true | false                      (false)
//   trials             positive integer                  (1)
//   format             csv | json                        (csv)
//   out                output path                       (stdout)

#include <cctype>
#include <charconv>
#include <cstdlib>
#include <cstdint>
#include <iomanip>
#include <limits>
#include <locale>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "entroflow/audit.hpp"
#include "entroflow/dynamics.hpp"
#include "entroflow/error.hpp"

namespace entroflow::io {

enum class Format { Csv, Json };

inline std::optional<Format> parse_format(std::string_view token) {
  if (token == "csv") return Format::Csv;
  if (token == "json") return Format::Json;
  return std::nullopt;
}

struct RunConfig {
  CycleConfig cycle;
  std::size_t trials = 1;
  Format format = Format::Csv;
  std::optional<std::string> out;
  bool seed_given = false;
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(ErrorCode::InvalidConfig, what) {}
};

namespace detail {

inline std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

inline std::uint64_t parse_u64(const std::string& field, const std::string& v) {
  std::uint64_t out = 0;
  const auto* end = v.data() + v.size();
  const auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc() || ptr != end) {
    throw ConfigError("field '" + field + "': expected unsigned integer, got '" + v + "'");
  }
  return out;
}

inline double parse_real(const std::string& field, const std::string& v) {
  char* end = nullptr;
  const double out = std::strtod(v.c_str(), &end);
  if (v.empty() || end != v.c_str() + v.size() || !std::isfinite(out)) {
    throw ConfigError("field '" + field + "': expected real number, got '" + v + "'");
  }
  return out;
}

inline bool parse_bool(const std::string& field, const std::string& v) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw ConfigError("field '" + field + "': expected true or false, got '" + v + "'");
}

struct RawConfig {
  std::optional<std::vector<std::size_t>> partition;
  std::optional<std::uint64_t> cycles;
  std::optional<double> dt;
  std::optional<double> local_strength;
  std::optional<double> coupling_strength;
  std::optional<double> k_B;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> initial_state;
  std::optional<std::uint64_t> rank;
  std::optional<ComplexMatrix> initial_matrix;
  std::optional<bool> fixed_hamiltonian;
  std::optional<std::uint64_t> trials;
  std::optional<std::string> format;
  std::optional<std::string> out;
};

inline std::vector<std::size_t> parse_dims(const std::string& field, const std::string& v) {
  std::vector<std::size_t> dims;
  std::string token;
  std::istringstream in(v);
  while (std::getline(in, token, ',')) {
    dims.push_back(static_cast<std::size_t>(parse_u64(field, trim(token))));
  }
  if (dims.empty()) throw ConfigError("field '" + field + "': empty partition");
  return dims;
}

inline void assign_scalar(RawConfig& raw, const std::string& key, const std::string& v) {
  if (key == "partition") raw.partition = parse_dims(key, v);
  else if (key == "cycles") raw.cycles = parse_u64(key, v);
  else if (key == "dt") raw.dt = parse_real(key, v);
  else if (key == "local_strength") raw.local_strength = parse_real(key, v);
  else if (key == "coupling_strength") raw.coupling_strength = parse_real(key, v);
  else if (key == "k_B") raw.k_B = parse_real(key, v);
  else if (key == "seed") raw.seed = parse_u64(key, v);
  else if (key == "initial_state") raw.initial_state = v;
  else if (key == "rank") raw.rank = parse_u64(key, v);
  else if (key == "fixed_hamiltonian") raw.fixed_hamiltonian = parse_bool(key, v);
  else if (key == "trials") raw.trials = parse_u64(key, v);
  else if (key == "format") raw.format = v;
  else if (key == "out") raw.out = v;
  else if (key == "initial_matrix") {
    throw ConfigError("field 'initial_matrix': only supported in JSON configs");
  } else {
    throw ConfigError("unknown key '" + key + "'");
  }
}

inline RawConfig parse_key_value(std::string_view text) {
  RawConfig raw;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(lineno) + ": expected 'key = value'");
    }
    const std::string key = trim(std::string_view(body).substr(0, eq));
    const std::string value = trim(std::string_view(body).substr(eq + 1));
    try {
      assign_scalar(raw, key, value);
    } catch (const ConfigError& e) {
      throw ConfigError("line " + std::to_string(lineno) + ": " +
                        std::string(e.what()).substr(sizeof("InvalidConfig: ") - 1));
    }
  }
  return raw;
}

inline ComplexMatrix parse_matrix_json(const nlohmann::json& j) {
  const std::string field = "initial_matrix";
  if (!j.is_array() || j.empty()) throw ConfigError("field '" + field + "': expected rows");
  const std::size_t n = j.size();
  ComplexMatrix m(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    if (!j[r].is_array() || j[r].size() != n) {
      throw ConfigError("field '" + field + "': row " + std::to_string(r) + " is not length " +
                        std::to_string(n));
    }
    for (std::size_t c = 0; c < n; ++c) {
      const auto& e = j[r][c];
      if (e.is_number()) {
        m(r, c) = e.get<double>();
      } else if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
        m(r, c) = Complex(e[0].get<double>(), e[1].get<double>());
      } else {
        throw ConfigError("field '" + field + "': entry (" + std::to_string(r) + "," +
                          std::to_string(c) + ") is not a number or [re, im]");
      }
    }
  }
  return m;
}

inline RawConfig parse_json_config(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("JSON parse error: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("top-level JSON value must be an object");
  RawConfig raw;
  for (const auto& [key, value] : j.items()) {
    if (key == "initial_matrix") {
      raw.initial_matrix = parse_matrix_json(value);
    } else if (key == "partition" && value.is_array()) {
      std::vector<std::size_t> dims;
      for (const auto& d : value) {
        if (!d.is_number_unsigned()) {
          throw ConfigError("field 'partition': entries must be unsigned integers");
        }
        dims.push_back(d.get<std::size_t>());
      }
      raw.partition = dims;
    } else if (value.is_string()) {
      assign_scalar(raw, key, value.get<std::string>());
    } else if (value.is_boolean() || value.is_number()) {
      assign_scalar(raw, key, value.dump());
    } else {
      throw ConfigError("field '" + key + "': unsupported value " + value.dump());
    }
  }
  return raw;
}

inline std::size_t positive(const std::string& field, std::uint64_t v) {
  if (v == 0) throw ConfigError("field '" + field + "': must be positive");
  return static_cast<std::size_t>(v);
}

}  // namespace detail

/// Parses either config dialect; `env_seed` is the fallback base seed used
/// when the file has no `seed` key.
inline RunConfig parse_run_config(std::string_view text,
                                  std::optional<std::uint64_t> env_seed = std::nullopt) {
  const auto first = text.find_first_not_of(" \t\r\n");
  const bool json = first != std::string_view::npos && text[first] == '{';
  const auto raw = json ? detail::parse_json_config(text) : detail::parse_key_value(text);

  RunConfig rc;
  CycleConfig& c = rc.cycle;
  if (!raw.partition) throw ConfigError("field 'partition': required");
  try {
    c.partition = Partition(*raw.partition);
  } catch (const Error& e) {
    throw ConfigError(std::string("field 'partition': ") + e.what());
  }
  if (raw.cycles) c.cycles = detail::positive("cycles", *raw.cycles);
  if (raw.dt) {
    if (!(*raw.dt > 0.0)) throw ConfigError("field 'dt': must be positive");
    c.dt = *raw.dt;
  }
  if (raw.local_strength) {
    if (!(*raw.local_strength >= 0.0)) throw ConfigError("field 'local_strength': negative");
    c.local_strength = *raw.local_strength;
  }
  if (raw.coupling_strength) {
    if (!(*raw.coupling_strength >= 0.0)) throw ConfigError("field 'coupling_strength': negative");
    c.coupling_strength = *raw.coupling_strength;
  }
  if (raw.k_B) {
    if (!(*raw.k_B > 0.0)) throw ConfigError("field 'k_B': must be positive");
    c.k_B = *raw.k_B;
  }
  if (raw.seed) {
    c.seed = RngSeed{*raw.seed, 0};
    rc.seed_given = true;
  } else if (env_seed) {
    c.seed = RngSeed{*env_seed, 0};
    rc.seed_given = true;
  }
  const std::string start = raw.initial_state.value_or(raw.initial_matrix ? "explicit" : "pure-random");
  if (start == "pure-random") {
    c.initial_state = PureRandomStart{};
  } else if (start == "mixed-random") {
    const std::size_t rank = detail::positive("rank", raw.rank.value_or(1));
    if (rank > c.partition.total()) throw ConfigError("field 'rank': exceeds total dimension");
    c.initial_state = MixedRandomStart{rank};
  } else if (start == "explicit") {
    if (!raw.initial_matrix) throw ConfigError("field 'initial_matrix': required for explicit");
    if (raw.initial_matrix->rows() != c.partition.total()) {
      throw ConfigError("field 'initial_matrix': dimension differs from partition total");
    }
    try {
      c.initial_state = ExplicitStart{validate_density(*raw.initial_matrix).matrix()};
    } catch (const Error& e) {
      throw ConfigError(std::string("field 'initial_matrix': ") + e.what());
    }
  } else {
    throw ConfigError("field 'initial_state': unknown value '" + start + "'");
  }
  if (raw.fixed_hamiltonian) c.fixed_hamiltonian = *raw.fixed_hamiltonian;
  if (raw.trials) rc.trials = detail::positive("trials", *raw.trials);
  if (raw.format) {
    const auto f = parse_format(*raw.format);
    if (!f) throw ConfigError("field 'format': expected csv or json, got '" + *raw.format + "'");
    rc.format = *f;
  }
  rc.out = raw.out;
  return rc;
}

/// %.17g in the classic locale.
inline std::string format_real(double x) {
  std::ostringstream s;
  s.imbue(std::locale::classic());
  s << std::setprecision(17) << x;
  return s.str();
}

inline std::string csv_header(std::size_t parts, bool with_trial) {
  std::string h = with_trial ? "trial," : "";
  h += "cycle,time,information_nats,entropy_total";
  for (std::size_t i = 0; i < parts; ++i) h += ",entropy_part_" + std::to_string(i);
  h += ",correlation_surrendered";
  return h;
}

/// One header line, then one row per measurement event. A leading `trial`
/// column appears only when more than one trajectory is written.
inline void write_trajectories_csv(std::ostream& os, const std::vector<Trajectory>& trajs) {
  if (trajs.empty()) return;
  const bool with_trial = trajs.size() > 1;
  os << csv_header(trajs.front().part_dims.size(), with_trial) << '\n';
  for (std::size_t t = 0; t < trajs.size(); ++t) {
    for (const auto& s : trajs[t].steps) {
      if (with_trial) os << t << ',';
      os << s.cycle << ',' << format_real(s.time) << ',' << format_real(s.information) << ','
         << format_real(s.entropy_total);
      for (const auto e : s.entropy_parts) os << ',' << format_real(e);
      os << ',' << format_real(s.correlation_surrendered) << '\n';
    }
  }
}

inline nlohmann::json to_json(const Trajectory& traj) {
  nlohmann::json steps = nlohmann::json::array();
  for (const auto& s : traj.steps) {
    steps.push_back({{"cycle", s.cycle},
                     {"time", s.time},
                     {"information_nats", s.information},
                     {"entropy_total", s.entropy_total},
                     {"entropy_parts", s.entropy_parts},
                     {"correlation_surrendered", s.correlation_surrendered},
                     {"information_post_collapse", s.information_post_collapse}});
  }
  return {{"part_dims", traj.part_dims}, {"k_B", traj.k_B}, {"steps", std::move(steps)}};
}

inline void write_trajectories_json(std::ostream& os, const std::vector<Trajectory>& trajs) {
  nlohmann::json doc = {{"format", "entroflow-trajectory"}, {"version", 1}};
  nlohmann::json list = nlohmann::json::array();
  for (std::size_t t = 0; t < trajs.size(); ++t) {
    auto j = to_json(trajs[t]);
    j["trial"] = t;
    list.push_back(std::move(j));
  }
  doc["trials"] = std::move(list);
  os << doc.dump(2) << '\n';
}

inline void write_trajectories(std::ostream& os, const std::vector<Trajectory>& trajs,
                               Format f) {
  if (f == Format::Csv) write_trajectories_csv(os, trajs);
  else write_trajectories_json(os, trajs);
}

/// Reads back a single-trajectory CSV as written above.
inline Trajectory read_trajectory_csv(std::istream& is, double k_B = 1.0) {
  std::string line;
  if (!std::getline(is, line)) throw ConfigError("empty trajectory CSV");
  std::vector<std::string> header;
  {
    std::istringstream h(line);
    std::string cell;
    while (std::getline(h, cell, ',')) header.push_back(cell);
  }
  if (header.size() < 5 || header[0] != "cycle") throw ConfigError("unexpected CSV header");
  const std::size_t parts = header.size() - 5;
  Trajectory traj;
  traj.k_B = k_B;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::istringstream r(line);
    std::string cell;
    while (std::getline(r, cell, ',')) cells.push_back(cell);
    if (cells.size() != header.size()) throw ConfigError("ragged CSV row");
    TrajectoryStep s;
    s.cycle = static_cast<std::size_t>(detail::parse_u64("cycle", cells[0]));
    s.time = std::stod(cells[1]);
    s.information = std::stod(cells[2]);
    s.entropy_total = std::stod(cells[3]);
    for (std::size_t i = 0; i < parts; ++i) s.entropy_parts.push_back(std::stod(cells[4 + i]));
    s.correlation_surrendered = std::stod(cells.back());
    traj.steps.push_back(std::move(s));
  }
  traj.part_dims.assign(parts, 0);
  return traj;
}

inline void write_suite_results(std::ostream& os, const std::vector<audit::SuiteResult>& results,
                                Format f) {
  if (f == Format::Csv) {
    os << "suite,samples,worst,comparison,bound,violations,pass\n";
    for (const auto& r : results) {
      os << r.name << ',' << r.samples << ',' << format_real(r.worst) << ','
         << audit::to_string(r.kind) << ',' << format_real(r.bound) << ',' << r.violations
         << ',' << (r.pass() ? "true" : "false") << '\n';
    }
    return;
  }
  nlohmann::json list = nlohmann::json::array();
  for (const auto& r : results) {
    nlohmann::json j = {{"suite", r.name},
                        {"samples", r.samples},
                        {"worst", r.worst},
                        {"comparison", std::string(audit::to_string(r.kind))},
                        {"bound", r.bound},
                        {"violations", r.violations},
                        {"pass", r.pass()}};
    if (!r.pass()) j["first_violation_stream"] = r.first_violation_stream;
    list.push_back(std::move(j));
  }
  os << nlohmann::json{{"suites", std::move(list)}, {"pass", audit::all_pass(results)}}.dump(2)
     << '\n';
}

}  // namespace entroflow::io
