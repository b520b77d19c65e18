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

#include <gtest/gtest.h>

#include <sstream>
#include <string>

#include "entroflow/io.hpp"

namespace entroflow {
namespace {

TEST(ParseRunConfig, KeyValueDialect) {
  const auto rc = io::parse_run_config(R"(
    # three qubits
    partition = 2,2,2
    cycles = 12
    dt = 0.5
    coupling_strength = 2
    k_B = 1.5
    seed = 7
    initial_state = mixed-random
    rank = 3
    format = json
    trials = 4
  )");
  EXPECT_EQ(rc.cycle.partition, Partition({2, 2, 2}));
  EXPECT_EQ(rc.cycle.cycles, 12u);
  EXPECT_EQ(rc.cycle.dt, 0.5);
  EXPECT_EQ(rc.cycle.coupling_strength, 2.0);
  EXPECT_EQ(rc.cycle.local_strength, 1.0);
  EXPECT_EQ(rc.cycle.k_B, 1.5);
  EXPECT_EQ(rc.cycle.seed, (RngSeed{7, 0}));
  EXPECT_EQ(std::get<MixedRandomStart>(rc.cycle.initial_state).rank, 3u);
  EXPECT_EQ(rc.format, io::Format::Json);
  EXPECT_EQ(rc.trials, 4u);
}

TEST(ParseRunConfig, JsonDialectWithExplicitMatrix) {
  const auto rc = io::parse_run_config(R"({
    "partition": [2],
    "cycles": 3,
    "initial_matrix": [[0.5, [0.0, -0.5]], [[0.0, 0.5], 0.5]],
    "fixed_hamiltonian": true
  })");
  const auto& m = std::get<ExplicitStart>(rc.cycle.initial_state).matrix;
  EXPECT_EQ(m(0, 1), Complex(0.0, -0.5));
  EXPECT_TRUE(rc.cycle.fixed_hamiltonian);
}

TEST(ParseRunConfig, SeedFallsBackToEnvironmentValue) {
  EXPECT_EQ(io::parse_run_config("partition = 2,2", 99).cycle.seed.seed, 99u);
  EXPECT_EQ(io::parse_run_config("partition = 2,2\nseed = 3", 99).cycle.seed.seed, 3u);
  EXPECT_FALSE(io::parse_run_config("partition = 2,2").seed_given);
}

TEST(ParseRunConfig, DiagnosticsNameLineAndField) {
  auto message = [](const std::string& text) {
    try {
      io::parse_run_config(text);
    } catch (const io::ConfigError& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  EXPECT_NE(message("partition = 2,2\ncycles = many").find("line 2: field 'cycles'"),
            std::string::npos);
  EXPECT_NE(message("partition = 2,2\nbogus = 1").find("line 2: unknown key 'bogus'"),
            std::string::npos);
  EXPECT_NE(message("partition 2,2").find("line 1"), std::string::npos);
  EXPECT_NE(message("cycles = 3").find("field 'partition'"), std::string::npos);
  EXPECT_NE(message("partition = 2,1").find("field 'partition'"), std::string::npos);
  EXPECT_NE(message("partition = 2\ndt = -1").find("field 'dt'"), std::string::npos);
  EXPECT_NE(message("partition = 2\nformat = xml").find("field 'format'"), std::string::npos);
  EXPECT_NE(message("{\"partition\": [2,2], ").find("JSON parse error"), std::string::npos);
  EXPECT_NE(message(R"({"partition": [2], "initial_matrix": [[1, 1], [0, 0]]})")
                .find("field 'initial_matrix'"),
            std::string::npos);
}

Trajectory sample_trajectory() {
  CycleConfig cfg;
  cfg.partition = Partition({2, 3});
  cfg.cycles = 4;
  cfg.seed = RngSeed{17, 0};
  return run_cycle_experiment(cfg);
}

TEST(TrajectoryCsv, HeaderIsFixed) {
  std::ostringstream os;
  io::write_trajectories_csv(os, {sample_trajectory()});
  const auto text = os.str();
  EXPECT_EQ(text.substr(0, text.find('\n')),
            "cycle,time,information_nats,entropy_total,entropy_part_0,entropy_part_1,"
            "correlation_surrendered");
}

TEST(TrajectoryCsv, RoundTripIsLossless) {
  const auto traj = sample_trajectory();
  std::ostringstream os;
  io::write_trajectories_csv(os, {traj});
  std::istringstream is(os.str());
  const auto back = io::read_trajectory_csv(is);
  ASSERT_EQ(back.steps.size(), traj.steps.size());
  for (std::size_t k = 0; k < traj.steps.size(); ++k) {
    EXPECT_EQ(back.steps[k].cycle, traj.steps[k].cycle);
    EXPECT_EQ(back.steps[k].time, traj.steps[k].time);
    EXPECT_EQ(back.steps[k].information, traj.steps[k].information);
    EXPECT_EQ(back.steps[k].entropy_total, traj.steps[k].entropy_total);
    EXPECT_EQ(back.steps[k].entropy_parts, traj.steps[k].entropy_parts);
    EXPECT_EQ(back.steps[k].correlation_surrendered, traj.steps[k].correlation_surrendered);
  }
}

TEST(TrajectoryCsv, MultipleTrialsGetTrialColumn) {
  const auto t = sample_trajectory();
  std::ostringstream os;
  io::write_trajectories_csv(os, {t, t});
  EXPECT_EQ(os.str().rfind("trial,cycle,", 0), 0u);
}

TEST(TrajectoryJson, CarriesAllFields) {
  std::ostringstream os;
  io::write_trajectories_json(os, {sample_trajectory()});
  const auto j = nlohmann::json::parse(os.str());
  EXPECT_EQ(j["format"], "entroflow-trajectory");
  const auto& steps = j["trials"][0]["steps"];
  ASSERT_EQ(steps.size(), 4u);
  EXPECT_EQ(steps[0]["entropy_parts"].size(), 2u);
  EXPECT_TRUE(steps[3].contains("information_post_collapse"));
}

TEST(FormatReal, SeventeenSignificantDigits) {
  EXPECT_EQ(io::format_real(0.1), "0.10000000000000001");
  EXPECT_EQ(io::format_real(2.0), "2");
}

TEST(SuiteResults, CsvAndJson) {
  const std::vector<audit::SuiteResult> r{
      {"a", 3, -1e-13, audit::Bound::AtLeast, -1e-12, 0, 0}};
  std::ostringstream csv;
  io::write_suite_results(csv, r, io::Format::Csv);
  EXPECT_EQ(csv.str(),
            "suite,samples,worst,comparison,bound,violations,pass\n"
            "a,3,-1e-13,>=,-9.9999999999999998e-13,0,true\n");
  std::ostringstream json;
  io::write_suite_results(json, r, io::Format::Json);
  EXPECT_TRUE(nlohmann::json::parse(json.str())["pass"].get<bool>());
}

}  // namespace
}  // namespace entroflow
