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

// entroflow: command-line driver for the lemma audits, the quantum invariant
// checks and the measure/evolve cycle experiment.
//
// Exit status: 0 pass, 1 scientific violation, 2 usage or config error.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "entroflow/audit.hpp"
#include "entroflow/dynamics.hpp"
#include "entroflow/io.hpp"

namespace {

using namespace entroflow;

constexpr int kPass = 0;
constexpr int kViolation = 1;
constexpr int kUsage = 2;
constexpr double kSecondLawTolerance = 1e-8;

std::optional<std::uint64_t> env_seed() {
  const char* v = std::getenv("ENTROFLOW_SEED");
  if (v == nullptr || *v == '\0') return std::nullopt;
  char* end = nullptr;
  const auto seed = std::strtoull(v, &end, 10);
  if (*end != '\0') return std::nullopt;
  return seed;
}

/// Writes `body` to the path, or stdout when no path is given.
bool emit(const std::optional<std::string>& path, const std::string& body) {
  if (!path || *path == "-") {
    std::cout << body;
    return static_cast<bool>(std::cout.flush());
  }
  std::ofstream f(*path, std::ios::binary);
  if (!f) return false;
  f << body;
  return static_cast<bool>(f);
}

struct Common {
  std::optional<std::uint64_t> seed;
  std::string format = "csv";
  std::optional<std::string> out;
};

int report_suites(const std::vector<audit::SuiteResult>& results, const Common& c,
                  std::uint64_t seed) {
  std::ostringstream body;
  io::write_suite_results(body, results, *io::parse_format(c.format));
  if (!emit(c.out, body.str())) {
    std::cerr << "error: cannot write " << c.out.value_or("stdout") << '\n';
    return kUsage;
  }
  int status = kPass;
  for (const auto& r : results) {
    if (!r.pass()) {
      std::cerr << "violation: " << r.name << " worst " << io::format_real(r.worst) << ' '
                << audit::to_string(r.kind) << ' ' << io::format_real(r.bound)
                << " failed (seed " << seed << ", sample " << r.first_violation_stream << ")\n";
      status = kViolation;
    }
  }
  return status;
}

int run_lemmas(std::size_t samples, std::size_t max_size, const Common& c) {
  const std::uint64_t seed = c.seed.value_or(env_seed().value_or(0));
  return report_suites(audit::run_lemma_audit({samples, max_size, seed}), c, seed);
}

int run_check(std::size_t max_dim, std::size_t trials, const Common& c) {
  const std::uint64_t seed = c.seed.value_or(env_seed().value_or(0));
  return report_suites(audit::run_invariant_check({max_dim, trials, seed}), c, seed);
}

int run_cycle(const std::string& config_path, const Common& c, bool format_given,
              std::optional<std::size_t> trials, bool parallel) {
  std::ifstream in(config_path);
  if (!in) {
    std::cerr << "error: cannot open config '" << config_path << "'\n";
    return kUsage;
  }
  std::stringstream text;
  text << in.rdbuf();

  io::RunConfig rc;
  try {
    rc = io::parse_run_config(text.str(), env_seed());
  } catch (const Error& e) {
    std::cerr << config_path << ": " << e.what() << '\n';
    return kUsage;
  }
  if (c.seed) rc.cycle.seed = RngSeed{*c.seed, 0};
  if (format_given) rc.format = *io::parse_format(c.format);
  if (c.out) rc.out = c.out;
  if (trials) rc.trials = *trials;

  std::vector<Trajectory> trajs;
  try {
    trajs = run_trials(rc.cycle, rc.trials, parallel);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }

  std::ostringstream body;
  io::write_trajectories(body, trajs, rc.format);
  if (!emit(rc.out, body.str())) {
    std::cerr << "error: cannot write " << rc.out.value_or("stdout") << '\n';
    return kUsage;
  }

  int status = kPass;
  for (std::size_t t = 0; t < trajs.size(); ++t) {
    if (trajs[t].steps.size() < 2) {
      std::cerr << "trial " << t << ": single measurement, nothing to compare\n";
      continue;
    }
    const auto r = verify_second_law(trajs[t], kSecondLawTolerance);
    std::cerr << "trial " << t << ": second law " << (r.pass ? "holds" : "VIOLATED")
              << ", worst increment " << io::format_real(r.worst_increment) << " at event "
              << r.worst_index << '\n';
    if (!r.pass) status = kViolation;
  }
  return status;
}

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--seed", c.seed, "base seed (fallback: ENTROFLOW_SEED, then 0)");
  sub->add_option("--format", c.format, "output format")->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--out", c.out, "output path (default stdout)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"entroflow: entropy growth under measure/evolve cycles"};
  app.require_subcommand(1);

  Common common;

  std::size_t samples = 1000;
  std::size_t max_size = 8;
  auto* lemmas = app.add_subcommand("lemmas", "randomized audits of the classical inequalities");
  lemmas->add_option("--samples", samples, "samples per suite")->check(CLI::PositiveNumber);
  lemmas->add_option("--max-size", max_size, "largest vector/table size")
      ->check(CLI::PositiveNumber);
  add_common(lemmas, common);

  std::string config_path;
  std::optional<std::size_t> trials_override;
  bool parallel = false;
  auto* cycle = app.add_subcommand("cycle", "run measure/evolve cycle experiments");
  cycle->add_option("config", config_path, "config file (JSON or key = value)")->required();
  cycle->add_option("--trials", trials_override, "override the config's trial count")
      ->check(CLI::PositiveNumber);
  cycle->add_flag("--parallel", parallel, "run trials concurrently");
  add_common(cycle, common);

  std::size_t max_dim = 16;
  std::size_t trials = 200;
  auto* check = app.add_subcommand("check", "quantum invariant suites");
  check->add_option("--max-dim", max_dim, "largest total dimension")
      ->check(CLI::Range(std::size_t{2}, std::size_t{64}));
  check->add_option("--trials", trials, "random trials")->check(CLI::PositiveNumber);
  add_common(check, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  try {
    if (*lemmas) return run_lemmas(samples, max_size, common);
    if (*check) return run_check(max_dim, trials, common);
    if (*cycle) {
      return run_cycle(config_path, common, cycle->count("--format") > 0, trials_override,
                       parallel);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
