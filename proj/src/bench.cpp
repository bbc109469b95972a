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

#include "beambit/bench.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "beambit/aqnm.hpp"
#include "beambit/rate.hpp"
#include "beambit/rng.hpp"

namespace beambit {

namespace {

using nlohmann::json;

constexpr const char* kSweepHeader =
    "axis_name,axis_value,algo,mean_wsr_bps_hz,se_wsr,mean_energy,se_energy,"
    "mean_active_chains,mean_bits_per_chain,mean_hprime_evals,mean_runtime_ms,n_drops,seed";

std::string Num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

template <typename T>
std::vector<T> ScalarOrList(const json& v) {
  if (v.is_array()) return v.get<std::vector<T>>();
  return {v.get<T>()};
}

AlgoOutcome Describe(const std::string& algo, const Selection& raw, double wsr, int n_sub,
                     const CostModel& cm, std::uint64_t evals, double ms) {
  AlgoOutcome out;
  out.algo = algo;
  out.selection = Prune(raw);
  out.wsr_bits = wsr;
  out.wsr_bps_hz = wsr / n_sub;
  out.energy = SelectionCost(out.selection, cm);
  out.active_chains = out.selection.size();
  double bits = 0.0;
  for (const auto& t : out.selection) bits += t.bits;
  out.mean_bits = out.active_chains > 0 ? bits / out.active_chains : 0.0;
  out.hprime_evals = evals;
  out.runtime_ms = ms;
  return out;
}

std::vector<std::string> SplitCsvLine(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

void ExperimentConfig::Validate() const {
  if (scenario != "rayleigh" && scenario != "geometric") {
    throw std::invalid_argument("scenario must be \"rayleigh\" or \"geometric\"");
  }
  if (n_rx < 1 || n_users < 1 || n_subcarriers < 1 || n_taps < 1 || n_paths < 1) {
    throw std::invalid_argument("dimensions must be positive");
  }
  if (!(chain_cap >= 1 && chain_cap <= n_chains && n_chains <= n_rx)) {
    throw std::invalid_argument("need 1 <= chain_cap <= n_chains <= n_rx");
  }
  if (n_taps > n_subcarriers) throw std::invalid_argument("n_taps must not exceed n_subcarriers");
  if (tx_power_dbm.empty() || b_ref.empty()) throw std::invalid_argument("tx_power_dbm and b_ref must be non-empty");
  for (int b : b_ref) {
    if (b < 1 || b > 12) throw std::invalid_argument("b_ref must lie in [1, 12]");
  }
  if (delta < 0) throw std::invalid_argument("delta must be nonnegative");
  if (!(eps_beam >= 0.0) || !(theta > 0.0)) throw std::invalid_argument("invalid cost parameters");
  if (!(snr_db_min <= snr_db_max)) throw std::invalid_argument("snr range is reversed");
  if (n_drops < 1) throw std::invalid_argument("n_drops must be positive");
}

ExperimentConfig ExperimentConfig::At(double tx_power, int bref) const {
  ExperimentConfig c = *this;
  c.tx_power_dbm = {tx_power};
  c.b_ref = {bref};
  return c;
}

ExperimentConfig ConfigFromJson(const json& doc) {
  ExperimentConfig c;
  auto get = [&](const char* key, auto& field) {
    if (doc.contains(key)) field = doc.at(key).get<std::decay_t<decltype(field)>>();
  };
  get("scenario", c.scenario);
  get("n_rx", c.n_rx);
  get("n_users", c.n_users);
  get("n_chains", c.n_chains);
  get("chain_cap", c.chain_cap);
  get("n_subcarriers", c.n_subcarriers);
  get("n_taps", c.n_taps);
  get("n_paths", c.n_paths);
  if (doc.contains("tx_power_dbm")) c.tx_power_dbm = ScalarOrList<double>(doc.at("tx_power_dbm"));
  if (doc.contains("b_ref")) c.b_ref = ScalarOrList<int>(doc.at("b_ref"));
  get("delta", c.delta);
  get("eps_beam", c.eps_beam);
  get("theta", c.theta);
  if (doc.contains("eps_switch")) {
    for (const auto& e : doc.at("eps_switch")) {
      c.eps_switch[{e.at("b").get<int>(), e.at("b_ref").get<int>()}] = e.at("cost").get<double>();
    }
  }
  if (doc.contains("snr_db_range")) {
    const auto r = doc.at("snr_db_range").get<std::vector<double>>();
    if (r.size() != 2) throw std::invalid_argument("snr_db_range must be [lo, hi]");
    c.snr_db_min = r[0];
    c.snr_db_max = r[1];
  }
  get("n_drops", c.n_drops);
  get("seed", c.seed);
  if (doc.contains("scenario") && c.scenario == "geometric" && !doc.contains("n_taps")) c.n_taps = 1;
  c.Validate();
  return c;
}

json ConfigToJson(const ExperimentConfig& c) {
  json doc;
  doc["scenario"] = c.scenario;
  doc["n_rx"] = c.n_rx;
  doc["n_users"] = c.n_users;
  doc["n_chains"] = c.n_chains;
  doc["chain_cap"] = c.chain_cap;
  doc["n_subcarriers"] = c.n_subcarriers;
  doc["n_taps"] = c.n_taps;
  doc["n_paths"] = c.n_paths;
  doc["tx_power_dbm"] = c.tx_power_dbm;
  doc["b_ref"] = c.b_ref;
  doc["delta"] = c.delta;
  doc["eps_beam"] = c.eps_beam;
  doc["theta"] = c.theta;
  json sw = json::array();
  for (const auto& [key, cost] : c.eps_switch) sw.push_back({{"b", key.first}, {"b_ref", key.second}, {"cost", cost}});
  doc["eps_switch"] = std::move(sw);
  doc["snr_db_range"] = {c.snr_db_min, c.snr_db_max};
  doc["n_drops"] = c.n_drops;
  doc["seed"] = c.seed;
  return doc;
}

ExperimentConfig LoadConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config " + path);
  return ConfigFromJson(json::parse(in));
}

double MatchedBudget(const CostModel& base, int n_chains, int b_ref) {
  double per_chain = std::ldexp(base.theta, b_ref);
  if (!base.eps_beam.empty()) per_chain += base.eps_beam.front();
  if (auto it = base.eps_switch.find({b_ref, b_ref}); it != base.eps_switch.end()) per_chain += it->second;
  return n_chains * per_chain;
}

CostModel DropCostModel(const ExperimentConfig& cfg) {
  CostModel cm;
  cm.eps_beam.assign(cfg.n_rx, cfg.eps_beam);
  cm.eps_switch = cfg.eps_switch;
  cm.theta = cfg.theta;
  cm.b_ref = cfg.b_ref.front();
  cm.budget_m = cfg.chain_cap;
  cm.budget_e = MatchedBudget(cm, cfg.n_chains, cm.b_ref);
  return cm;
}

Instance MakeDropInstance(const ExperimentConfig& cfg, int drop_index) {
  const std::uint64_t drop_seed = DeriveSeed(cfg.seed, static_cast<std::uint64_t>(drop_index));
  const bool geometric = cfg.scenario == "geometric";
  ChannelRealization channel =
      geometric ? GenerateGeometric(cfg.n_rx, cfg.n_users, cfg.n_paths, DeriveSeed(drop_seed, 0), cfg.n_subcarriers)
                : GenerateRayleigh(cfg.n_rx, cfg.n_users, cfg.n_taps, cfg.n_subcarriers, DeriveSeed(drop_seed, 0));
  Rng snr_rng(DeriveSeed(drop_seed, 1));
  Eigen::VectorXd loads(cfg.n_users);
  for (int k = 0; k < cfg.n_users; ++k) {
    const double snr_db = snr_rng.Uniform(cfg.snr_db_min, cfg.snr_db_max);
    loads(k) = std::pow(10.0, (snr_db + cfg.tx_power_dbm.front()) / 10.0);
  }
  return Instance{std::move(channel), PowerProfile::Flat(cfg.n_subcarriers, loads),
                  geometric ? DftCodebook(cfg.n_rx) : IdentityCodebook(cfg.n_rx),
                  UserState::FullBuffer(std::vector<double>(cfg.n_users, 1.0))};
}

const AlgoOutcome& DropResult::Get(const std::string& algo) const {
  for (const auto& o : outcomes) {
    if (o.algo == algo) return o;
  }
  throw std::out_of_range("no result for algorithm " + algo);
}

DropResult RunDrop(const ExperimentConfig& cfg, int drop_index, const std::vector<std::string>& algos) {
  cfg.Validate();
  const Instance inst = MakeDropInstance(cfg, drop_index);
  const AqnmModel model(inst);
  const CostModel cm = DropCostModel(cfg);
  const int b_ref = cfg.b_ref.front();
  const int n_beams = inst.codebook.size();

  DropResult result;
  result.drop_index = drop_index;
  result.seed = cfg.seed;
  result.budget = cm.budget_e;
  using Clock = std::chrono::steady_clock;
  for (const auto& algo : algos) {
    RateEvaluator eval(model, inst.users);
    const auto start = Clock::now();
    Selection sel;
    double value = 0.0;
    std::vector<TraceStep> trace;
    if (algo == "joint") {
      const GroundSet ground(n_beams, DynamicRange(b_ref, cfg.delta), cm);
      auto r = Algorithm1(eval, ground, cm);
      sel = r.selection;
      value = r.value;
      trace = std::move(r.trace);
    } else if (algo == "qafas") {
      const auto r = GreedyFixedBits(eval, n_beams, b_ref, cfg.chain_cap);
      sel = r.selection;
      value = r.value;
    } else if (algo == "fas") {
      const auto r = FasSelect(eval, n_beams, b_ref, cfg.chain_cap);
      sel = r.selection;
      value = r.value;
    } else if (algo == "random") {
      // Random subset of beams at the reference resolution.
      const GroundSet ground(n_beams, {b_ref}, cm);
      Rng rng(DeriveSeed(DeriveSeed(cfg.seed, static_cast<std::uint64_t>(drop_index)), 2));
      sel = RandomSelect(ground, cm, rng);
      value = eval.HPrime(sel);
    } else if (algo == "brute") {
      const GroundSet ground(n_beams, DynamicRange(b_ref, cfg.delta), cm);
      const auto r = BruteForceOpt(eval, ground, cm);
      sel = r.selection;
      value = r.value;
    } else {
      throw std::invalid_argument("unknown algorithm: " + algo);
    }
    const double ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
    result.outcomes.push_back(Describe(algo, sel, value, inst.channel.n_subcarriers(), cm, eval.evaluations(), ms));
    result.outcomes.back().trace = std::move(trace);
  }
  return result;
}

std::pair<double, double> MeanAndStdErr(const std::vector<double>& xs) {
  if (xs.empty()) return {0.0, 0.0};
  double sum = 0.0;
  for (double x : xs) sum += x;
  const double mean = sum / xs.size();
  if (xs.size() < 2) return {mean, 0.0};
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return {mean, std::sqrt(ss / (xs.size() - 1)) / std::sqrt(static_cast<double>(xs.size()))};
}

SweepResult RunSweep(const ExperimentConfig& cfg, const std::string& axis) {
  cfg.Validate();
  if (axis != "power" && axis != "bref") throw std::invalid_argument("axis must be \"power\" or \"bref\"");
  const bool power_axis = axis == "power";
  const std::size_t n_values = power_axis ? cfg.tx_power_dbm.size() : cfg.b_ref.size();
  SweepResult out;
  for (std::size_t i = 0; i < n_values; ++i) {
    const double tx = power_axis ? cfg.tx_power_dbm[i] : cfg.tx_power_dbm.front();
    const int bref = power_axis ? cfg.b_ref.front() : cfg.b_ref[i];
    const ExperimentConfig point = cfg.At(tx, bref);
    std::vector<DropResult> drops;
    for (int d = 0; d < cfg.n_drops; ++d) drops.push_back(RunDrop(point, d));
    for (const auto& algo : AlgorithmNames()) {
      std::vector<double> wsr, energy, chains, bits, evals, ms;
      for (const auto& dr : drops) {
        const auto& o = dr.Get(algo);
        wsr.push_back(o.wsr_bps_hz);
        energy.push_back(o.energy);
        chains.push_back(o.active_chains);
        bits.push_back(o.mean_bits);
        evals.push_back(static_cast<double>(o.hprime_evals));
        ms.push_back(o.runtime_ms);
      }
      SweepRow row;
      row.axis_name = axis;
      row.axis_value = power_axis ? tx : bref;
      row.algo = algo;
      std::tie(row.mean_wsr_bps_hz, row.se_wsr) = MeanAndStdErr(wsr);
      std::tie(row.mean_energy, row.se_energy) = MeanAndStdErr(energy);
      row.mean_active_chains = MeanAndStdErr(chains).first;
      row.mean_bits_per_chain = MeanAndStdErr(bits).first;
      row.mean_hprime_evals = MeanAndStdErr(evals).first;
      row.mean_runtime_ms = MeanAndStdErr(ms).first;
      row.n_drops = cfg.n_drops;
      row.seed = cfg.seed;
      out.rows.push_back(row);
    }
    out.drops.push_back(std::move(drops));
  }
  return out;
}

std::string SweepCsv(const std::vector<SweepRow>& rows, bool include_runtime) {
  std::string out = std::string(kSweepHeader) + "\n";
  for (const auto& r : rows) {
    out += r.axis_name + "," + Num(r.axis_value) + "," + r.algo + "," + Num(r.mean_wsr_bps_hz) + "," +
           Num(r.se_wsr) + "," + Num(r.mean_energy) + "," + Num(r.se_energy) + "," +
           Num(r.mean_active_chains) + "," + Num(r.mean_bits_per_chain) + "," + Num(r.mean_hprime_evals) +
           "," + Num(include_runtime ? r.mean_runtime_ms : 0.0) + "," + std::to_string(r.n_drops) + "," +
           std::to_string(r.seed) + "\n";
  }
  return out;
}

std::vector<SweepRow> ParseSweepCsv(const std::string& text) {
  std::stringstream ss(text);
  std::string line;
  if (!std::getline(ss, line) || line != kSweepHeader) throw std::invalid_argument("unexpected sweep CSV header");
  std::vector<SweepRow> rows;
  while (std::getline(ss, line)) {
    if (line.empty()) continue;
    const auto f = SplitCsvLine(line);
    if (f.size() != 13) throw std::invalid_argument("sweep CSV row must have 13 fields");
    SweepRow r;
    r.axis_name = f[0];
    r.axis_value = std::stod(f[1]);
    r.algo = f[2];
    r.mean_wsr_bps_hz = std::stod(f[3]);
    r.se_wsr = std::stod(f[4]);
    r.mean_energy = std::stod(f[5]);
    r.se_energy = std::stod(f[6]);
    r.mean_active_chains = std::stod(f[7]);
    r.mean_bits_per_chain = std::stod(f[8]);
    r.mean_hprime_evals = std::stod(f[9]);
    r.mean_runtime_ms = std::stod(f[10]);
    r.n_drops = std::stoi(f[11]);
    r.seed = std::stoull(f[12]);
    rows.push_back(std::move(r));
  }
  return rows;
}

std::string SummarizeTables(const std::vector<SweepRow>& rows) {
  std::vector<double> axis_values;
  std::map<double, const SweepRow*> joint, qafas;
  std::string axis_name = rows.empty() ? "axis" : rows.front().axis_name;
  for (const auto& r : rows) {
    if (r.algo == "joint") {
      joint[r.axis_value] = &r;
      axis_values.push_back(r.axis_value);
    } else if (r.algo == "qafas") {
      qafas[r.axis_value] = &r;
    }
  }
  auto ratio = [](double a, double b) { return b != 0.0 ? a / b : 0.0; };
  std::string header = "metric";
  std::string energy = "energy_ratio", complexity = "complexity_ratio", chains = "avg_active_chains",
              bits = "avg_bits_per_chain", gain = "wsr_gain";
  for (double v : axis_values) {
    const SweepRow& j = *joint.at(v);
    const auto q_it = qafas.find(v);
    if (q_it == qafas.end()) throw std::invalid_argument("sweep has joint rows without qafas rows");
    const SweepRow& q = *q_it->second;
    header += "," + axis_name + "=" + Num(v);
    energy += "," + Num(ratio(j.mean_energy, q.mean_energy));
    complexity += "," + Num(ratio(j.mean_hprime_evals, q.mean_hprime_evals));
    chains += "," + Num(j.mean_active_chains);
    bits += "," + Num(j.mean_bits_per_chain);
    gain += "," + Num(ratio(j.mean_wsr_bps_hz, q.mean_wsr_bps_hz) - 1.0);
  }
  return header + "\n" + energy + "\n" + complexity + "\n" + chains + "\n" + bits + "\n" + gain + "\n";
}

}  // namespace beambit
