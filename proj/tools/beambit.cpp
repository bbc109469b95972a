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

// beambit command line: solve, sweep, verify, tables.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "beambit/bench.hpp"
#include "beambit/verify.hpp"

namespace {

using namespace beambit;

void WriteFile(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string SelectionField(const Selection& s) {
  std::string out;
  for (const auto& t : s) {
    if (!out.empty()) out += ';';
    out += std::to_string(t.beam) + ":" + BitsToString(t.bits);
  }
  return out;
}

std::string G(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

int Solve(const std::string& config_path, const std::string& algo, std::uint64_t seed,
          const std::string& out_path, const std::string& trace_path, const std::string& selection_path,
          const std::string& instance_path) {
  ExperimentConfig cfg = LoadConfig(config_path);
  cfg.seed = seed;
  const DropResult drop = RunDrop(cfg.At(cfg.tx_power_dbm.front(), cfg.b_ref.front()), 0, {algo});
  const AlgoOutcome& o = drop.outcomes.front();
  std::string csv =
      "algo,seed,tx_power_dbm,b_ref,budget,wsr_bits,wsr_bps_hz,energy,active_chains,mean_bits_per_chain,"
      "hprime_evals,selection\n";
  csv += o.algo + "," + std::to_string(seed) + "," + G(cfg.tx_power_dbm.front()) + "," +
         std::to_string(cfg.b_ref.front()) + "," + G(drop.budget) + "," + G(o.wsr_bits) + "," + G(o.wsr_bps_hz) +
         "," + G(o.energy) + "," + std::to_string(o.active_chains) + "," + G(o.mean_bits) + "," +
         std::to_string(o.hprime_evals) + "," + SelectionField(o.selection) + "\n";
  WriteFile(out_path, csv);
  if (!trace_path.empty()) {
    std::string trace = "iteration,beam,bits,h_marginal,c_marginal,d_marginal,zeta1,zeta2,value\n";
    for (const auto& s : o.trace) {
      trace += std::to_string(s.iteration) + "," + std::to_string(s.tuple.beam) + "," + BitsToString(s.tuple.bits) +
               "," + G(s.gain) + "," + G(s.c_marginal) + "," + G(s.d_marginal) + "," + G(s.zeta1) + "," +
               G(s.zeta2) + "," + G(s.value) + "\n";
    }
    WriteFile(trace_path, trace);
  }
  if (!selection_path.empty()) WriteFile(selection_path, SelectionToJson(o.selection).dump(2) + "\n");
  if (!instance_path.empty()) WriteFile(instance_path, InstanceToJson(MakeDropInstance(cfg, 0)).dump() + "\n");
  std::printf("%s: %.6f bits/s/Hz, energy %.6g of %.6g, %d chains\n", o.algo.c_str(), o.wsr_bps_hz, o.energy,
              drop.budget, o.active_chains);
  return 0;
}

int Verify(bool quick, const std::vector<int>& only) {
  VerifyOptions opt;
  opt.quick = quick;
  int failed = 0;
  RunChecks(opt, only, [&](const CheckResult& r) {
    std::printf("%s\n", FormatResult(r).c_str());
    std::fflush(stdout);
    if (!r.pass) ++failed;
  });
  return failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Joint beam and ADC resolution selection"};
  app.require_subcommand(1);

  std::string config, algo = "joint", out, trace, selection_out, instance_out;
  std::uint64_t seed = 1;
  auto* solve = app.add_subcommand("solve", "Run one algorithm on one drop");
  solve->add_option("--config", config, "Experiment config (JSON)")->required()->check(CLI::ExistingFile);
  solve->add_option("--algo", algo, "Algorithm")
      ->check(CLI::IsMember({"joint", "qafas", "fas", "random", "brute"}));
  solve->add_option("--seed", seed, "Drop seed");
  solve->add_option("--out", out, "Result CSV")->required();
  solve->add_option("--trace", trace, "Per-iteration trace CSV (joint)");
  solve->add_option("--selection-json", selection_out, "Write the selection as JSON");
  solve->add_option("--instance-json", instance_out, "Write the generated instance as JSON");

  std::string axis = "power";
  bool with_runtime = false;
  auto* sweep = app.add_subcommand("sweep", "Monte-Carlo sweep over transmit power or reference resolution");
  sweep->add_option("--config", config, "Experiment config (JSON)")->required()->check(CLI::ExistingFile);
  sweep->add_option("--axis", axis, "Sweep axis")->check(CLI::IsMember({"power", "bref"}));
  sweep->add_option("--out", out, "Sweep CSV")->required();
  sweep->add_flag("--with-runtime", with_runtime, "Write measured runtimes (output no longer reproducible)");

  bool quick = false;
  std::vector<int> only;
  auto* verify = app.add_subcommand("verify", "Run the acceptance checks");
  verify->add_flag("--quick", quick, "Reduced instance counts");
  verify->add_option("--only", only, "Check ids to run")->delimiter(',');

  std::string in;
  auto* tables = app.add_subcommand("tables", "Summary tables from a sweep CSV");
  tables->add_option("--in", in, "Sweep CSV")->required()->check(CLI::ExistingFile);
  tables->add_option("--out", out, "Table CSV")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*solve) return Solve(config, algo, seed, out, trace, selection_out, instance_out);
    if (*sweep) {
      const auto result = RunSweep(LoadConfig(config), axis);
      WriteFile(out, SweepCsv(result.rows, with_runtime));
      return 0;
    }
    if (*verify) return Verify(quick, only);
    if (*tables) {
      WriteFile(out, SummarizeTables(ParseSweepCsv(ReadFile(in))));
      return 0;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "beambit: %s\n", e.what());
    return 2;
  }
  return 0;
}
