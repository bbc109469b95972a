// Copyright 2026 The Authors.
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

#include <sstream>

#include "beambit/bench.hpp"
#include "doctest.h"

using namespace beambit;

namespace {

ExperimentConfig TinyConfig() {
  ExperimentConfig cfg;
  cfg.n_rx = 8;
  cfg.n_users = 3;
  cfg.n_chains = 4;
  cfg.chain_cap = 4;
  cfg.n_subcarriers = 4;
  cfg.n_taps = 2;
  cfg.b_ref = {3};
  cfg.delta = 2;
  cfg.n_drops = 3;
  cfg.seed = 9;
  return cfg;
}

}  // namespace

TEST_CASE("matched budget") {
  CostModel cm;
  cm.eps_beam = {1.0};
  cm.theta = 1.0;
  CHECK(MatchedBudget(cm, 4, 2) == 20.0);
  cm.eps_switch[{2, 2}] = 0.5;
  cm.eps_switch[{3, 2}] = 7.0;
  CHECK(MatchedBudget(cm, 4, 2) == 22.0);
}

TEST_CASE("drops are deterministic and respect the budget") {
  const ExperimentConfig cfg = TinyConfig();
  for (int d = 0; d < cfg.n_drops; ++d) {
    const DropResult a = RunDrop(cfg, d);
    const DropResult b = RunDrop(cfg, d);
    REQUIRE(a.outcomes.size() == AlgorithmNames().size());
    for (std::size_t i = 0; i < a.outcomes.size(); ++i) {
      CHECK(a.outcomes[i].selection == b.outcomes[i].selection);
      CHECK(a.outcomes[i].wsr_bits == b.outcomes[i].wsr_bits);
      CHECK(a.outcomes[i].energy <= a.budget * (1.0 + 1e-12));
      CHECK(a.outcomes[i].active_chains <= cfg.chain_cap);
      CHECK(a.outcomes[i].wsr_bps_hz == doctest::Approx(a.outcomes[i].wsr_bits / cfg.n_subcarriers));
    }
    CHECK(a.Get("qafas").energy == doctest::Approx(a.budget));
    CHECK_THROWS_AS(a.Get("brute"), std::out_of_range);
  }
  CHECK_THROWS_AS(RunDrop(cfg, 0, {"nope"}), std::invalid_argument);
}

TEST_CASE("joint trace ends at the reported greedy set") {
  const DropResult r = RunDrop(TinyConfig(), 1, {"joint"});
  const AlgoOutcome& j = r.Get("joint");
  REQUIRE_FALSE(j.trace.empty());
  CHECK(j.trace.back().value <= j.wsr_bits + 1e-9);
}

TEST_CASE("mean and standard error") {
  CHECK(MeanAndStdErr({}) == std::pair<double, double>{0.0, 0.0});
  CHECK(MeanAndStdErr({4.0}) == std::pair<double, double>{4.0, 0.0});
  const auto [m, se] = MeanAndStdErr({1.0, 2.0, 3.0, 4.0});
  CHECK(m == 2.5);
  CHECK(se == doctest::Approx(std::sqrt(5.0 / 3.0) / 2.0));
}

TEST_CASE("sweep csv round trip and tables") {
  ExperimentConfig cfg = TinyConfig();
  cfg.b_ref = {2, 4};
  cfg.n_drops = 2;
  const SweepResult s = RunSweep(cfg, "bref");
  REQUIRE(s.rows.size() == 2 * AlgorithmNames().size());
  const std::string csv = SweepCsv(s.rows);
  CHECK(csv.rfind("axis_name,axis_value,algo,", 0) == 0);
  const auto back = ParseSweepCsv(csv);
  CHECK(SweepCsv(back) == csv);
  for (const auto& r : back) CHECK(r.mean_runtime_ms == 0.0);
  CHECK_THROWS_AS(ParseSweepCsv("bad header\n"), std::invalid_argument);
  CHECK_THROWS_AS(RunSweep(cfg, "time"), std::invalid_argument);

  std::vector<SweepRow> same;
  for (auto r : back) {
    if (r.algo == "joint") {
      for (const auto& q : back) {
        if (q.algo == "qafas" && q.axis_value == r.axis_value) r.mean_energy = q.mean_energy;
      }
    }
    same.push_back(r);
  }
  std::istringstream tables(SummarizeTables(same));
  std::string header, energy;
  std::getline(tables, header);
  std::getline(tables, energy);
  CHECK(header == "metric,bref=2,bref=4");
  CHECK(energy == "energy_ratio,1,1");
}

TEST_CASE("config json") {
  ExperimentConfig cfg = TinyConfig();
  cfg.eps_switch[{2, 3}] = 0.25;
  cfg.tx_power_dbm = {0.0, 5.0};
  const ExperimentConfig back = ConfigFromJson(ConfigToJson(cfg));
  CHECK(ConfigToJson(back) == ConfigToJson(cfg));
  CHECK(ConfigFromJson({{"b_ref", 6}, {"tx_power_dbm", 3.0}}).b_ref == std::vector<int>{6});

  ExperimentConfig bad = cfg;
  bad.chain_cap = 5;
  CHECK_THROWS_AS(bad.Validate(), std::invalid_argument);
  bad = cfg;
  bad.b_ref = {13};
  CHECK_THROWS_AS(bad.Validate(), std::invalid_argument);
  bad = cfg;
  bad.scenario = "urban";
  CHECK_THROWS_AS(bad.Validate(), std::invalid_argument);

  const ExperimentConfig at = cfg.At(5.0, 7);
  CHECK(at.tx_power_dbm == std::vector<double>{5.0});
  CHECK(at.b_ref == std::vector<int>{7});
}

TEST_CASE("a generous budget lets every algorithm use the full chain cap") {
  ExperimentConfig cfg = TinyConfig();
  cfg.n_chains = 8;
  cfg.chain_cap = 3;
  const DropResult r = RunDrop(cfg, 0);
  for (const auto& o : r.outcomes) CHECK(o.active_chains == 3);
}
