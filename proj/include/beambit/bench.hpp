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

// Monte-Carlo experiment harness: random drops, budget matching, and the
// sweep / table CSV outputs.

#ifndef BEAMBIT_BENCH_HPP_
#define BEAMBIT_BENCH_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "beambit/instance.hpp"
#include "beambit/select.hpp"
#include "json.hpp"

namespace beambit {

struct ExperimentConfig {
  std::string scenario = "rayleigh";  // "rayleigh" | "geometric"
  int n_rx = 32;
  int n_users = 8;
  int n_chains = 16;   // M
  int chain_cap = 16;  // M'
  int n_subcarriers = 16;
  int n_taps = 4;
  int n_paths = 3;  // geometric only
  std::vector<double> tx_power_dbm = {0.0};
  std::vector<int> b_ref = {4};
  int delta = 3;  // dynamic range half-width around b_ref
  double eps_beam = 1.0;
  double theta = 1.0 / 16.0;
  std::map<std::pair<int, int>, double> eps_switch;
  double snr_db_min = -5.0;  // per-user SNR at 0 dBm transmit power
  double snr_db_max = 20.0;
  int n_drops = 50;
  std::uint64_t seed = 1;

  // Throws std::invalid_argument unless M' <= M <= n_rx, b_ref in [1, 12].
  void Validate() const;
  // Copy with a single transmit power and reference resolution.
  ExperimentConfig At(double tx_power, int bref) const;
};

ExperimentConfig ConfigFromJson(const nlohmann::json& doc);
nlohmann::json ConfigToJson(const ExperimentConfig& cfg);
ExperimentConfig LoadConfig(const std::string& path);

inline const std::vector<std::string>& AlgorithmNames() {
  static const std::vector<std::string> names = {"joint", "qafas", "fas", "random"};
  return names;
}

// M (eps_w + theta 2^{b_ref}) + M eps'(b_ref, b_ref).
double MatchedBudget(const CostModel& base, int n_chains, int b_ref);

// Cost model of one drop: uniform eps_w, matched budget, chain cap M'.
CostModel DropCostModel(const ExperimentConfig& cfg);

// Instance of drop `index` (uses cfg.tx_power_dbm[0]); channel and SNR draws
// depend only on (seed, index).
Instance MakeDropInstance(const ExperimentConfig& cfg, int drop_index);

struct AlgoOutcome {
  std::string algo;
  Selection selection;       // pruned
  double wsr_bits = 0.0;     // bits per OFDM symbol
  double wsr_bps_hz = 0.0;   // divided by N
  double energy = 0.0;
  int active_chains = 0;
  double mean_bits = 0.0;    // per active chain
  std::uint64_t hprime_evals = 0;
  double runtime_ms = 0.0;
  std::vector<TraceStep> trace;  // joint only
};

struct DropResult {
  int drop_index = 0;
  std::uint64_t seed = 0;
  double budget = 0.0;
  std::vector<AlgoOutcome> outcomes;  // in the order requested

  const AlgoOutcome& Get(const std::string& algo) const;
};

// Runs the named algorithms ("joint", "qafas", "fas", "random", "brute") on
// drop `drop_index` at cfg.tx_power_dbm[0] / cfg.b_ref[0].
DropResult RunDrop(const ExperimentConfig& cfg, int drop_index,
                   const std::vector<std::string>& algos = AlgorithmNames());

struct SweepRow {
  std::string axis_name;
  double axis_value = 0.0;
  std::string algo;
  double mean_wsr_bps_hz = 0.0;
  double se_wsr = 0.0;
  double mean_energy = 0.0;
  double se_energy = 0.0;
  double mean_active_chains = 0.0;
  double mean_bits_per_chain = 0.0;
  double mean_hprime_evals = 0.0;
  double mean_runtime_ms = 0.0;
  int n_drops = 0;
  std::uint64_t seed = 0;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  // drops[i] holds the per-drop results of axis value i.
  std::vector<std::vector<DropResult>> drops;
};

// axis is "power" (over cfg.tx_power_dbm) or "bref" (over cfg.b_ref).
SweepResult RunSweep(const ExperimentConfig& cfg, const std::string& axis);

// Runtime is wall-clock and therefore not reproducible; unless
// include_runtime is set the mean_runtime_ms column is written as 0 so that
// identical configs give byte-identical files.
std::string SweepCsv(const std::vector<SweepRow>& rows, bool include_runtime = false);
std::vector<SweepRow> ParseSweepCsv(const std::string& text);

// Rows: energy_ratio, complexity_ratio (joint vs qafas), avg_active_chains,
// avg_bits_per_chain, wsr_gain (joint vs qafas); one column per axis value.
std::string SummarizeTables(const std::vector<SweepRow>& rows);

// mean and standard error (sample std / sqrt(n); 0 for n = 1).
std::pair<double, double> MeanAndStdErr(const std::vector<double>& xs);

}  // namespace beambit

#endif  // BEAMBIT_BENCH_HPP_
