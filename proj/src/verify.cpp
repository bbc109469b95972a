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

#include "beambit/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>

#include "beambit/aqnm.hpp"
#include "beambit/bench.hpp"
#include "beambit/oracles.hpp"
#include "beambit/rate.hpp"

namespace beambit {

namespace {

std::string Fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof(buf), format, args...);
  return buf;
}

CheckResult Timed(int id, const char* name, const std::function<void(CheckResult&)>& body) {
  CheckResult r;
  r.id = id;
  r.name = name;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(r);
  } catch (const std::exception& e) {
    r.pass = false;
    r.summary = std::string("exception: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

int Count(const VerifyOptions& opt, int full, int quick) { return opt.quick ? quick : full; }

// Random subset of the ground set; each tuple kept with probability p.
Selection RandomSubset(const GroundSet& ground, double p, Rng& rng) {
  Selection s;
  for (const auto& t : ground.tuples()) {
    if (rng.Uniform() < p) s.Insert(t);
  }
  return s;
}

const std::vector<int> kTinyBits = {1, 2, 3, 4};

}  // namespace

Instance RandomInstance(const RandomInstanceSpec& spec, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> tap_power(spec.n_taps);
  const double decay = rng.Uniform();
  double total = 0.0;
  for (int l = 0; l < spec.n_taps; ++l) total += tap_power[l] = std::exp(-decay * l);
  for (double& p : tap_power) p /= total;
  ChannelRealization channel =
      GenerateRayleigh(spec.n_rx, spec.n_users, spec.n_taps, spec.n_subcarriers, tap_power, rng.NextU64());
  Eigen::VectorXd loads(spec.n_users);
  std::vector<double> weights, queues;
  for (int k = 0; k < spec.n_users; ++k) {
    loads(k) = std::pow(10.0, rng.Uniform(-5.0, 20.0) / 10.0);
    weights.push_back(rng.Uniform(0.5, 2.0));
    const bool finite = spec.finite_queues && rng.Uniform() < 0.5;
    const double q = rng.Uniform(spec.q_lo, spec.q_hi);
    queues.push_back(finite ? q : kInfiniteQueue);
  }
  return Instance{std::move(channel), PowerProfile::Flat(spec.n_subcarriers, loads), DftCodebook(spec.n_rx),
                  UserState(std::move(weights), std::move(queues))};
}

CostModel RandomCostModel(int n_beams, const std::vector<int>& bits, int chain_cap, Rng& rng) {
  CostModel cm;
  for (int w = 0; w < n_beams; ++w) cm.eps_beam.push_back(rng.Uniform(0.5, 1.5));
  cm.theta = rng.Uniform(0.05, 0.5);
  cm.b_ref = bits[bits.size() / 2];
  for (int b : bits) {
    if (b != cm.b_ref) cm.eps_switch[{b, cm.b_ref}] = rng.Uniform(0.0, 0.2);
  }
  cm.budget_m = chain_cap;
  std::vector<double> beam_max;
  for (int w = 0; w < n_beams; ++w) beam_max.push_back(TupleCost({w, bits.back()}, cm));
  std::sort(beam_max.rbegin(), beam_max.rend());
  double top = 0.0;
  for (int i = 0; i < std::min(chain_cap, n_beams); ++i) top += beam_max[i];
  cm.budget_e = rng.Uniform(0.25, 1.0) * top;
  return cm;
}

CheckResult CheckOracleGap(const VerifyOptions& opt) {
  return Timed(1, "oracle-gap", [&](CheckResult& r) {
    const int n = Count(opt, 200, 20);
    int failures = 0;
    double sum_ratio = 0.0, worst = 1.0;
    for (int i = 0; i < n; ++i) {
      const std::uint64_t seed = DeriveSeed(1001, i);
      const Instance inst = RandomInstance({8, 3, 2, 4, true}, seed);
      Rng rng(DeriveSeed(seed, 1));
      const CostModel cm = RandomCostModel(8, kTinyBits, 3, rng);
      const GroundSet ground(8, kTinyBits, cm);
      const AqnmModel model(inst);
      RateEvaluator eval(model, inst.users);
      const double alg = Algorithm1(eval, ground, cm).value;
      const double opt_value = BruteForceOpt(eval, ground, cm).value;
      const double ratio = opt_value > 0.0 ? alg / opt_value : 1.0;
      sum_ratio += ratio;
      worst = std::min(worst, ratio);
      if (alg < tol::kOracleGapFactor * opt_value) ++failures;
    }
    r.pass = failures == 0;
    r.summary = Fmt("%d instances, %d below %.3f x optimum; mean ratio %.4f, min ratio %.4f", n, failures,
                    tol::kOracleGapFactor, sum_ratio / n, worst);
  });
}

CheckResult CheckSubmodularity(const VerifyOptions& opt) {
  return Timed(2, "submodularity", [&](CheckResult& r) {
    const int n_inst = Count(opt, 20, 4);
    const int per_inst = 50;
    int dr_violations = 0, mono_violations = 0, triples = 0;
    double worst_dr = 0.0;
    for (int i = 0; i < n_inst; ++i) {
      const std::uint64_t seed = DeriveSeed(2002, i);
      const Instance inst = RandomInstance({8, 3, 2, 4, true}, seed);
      const AqnmModel model(inst);
      RateEvaluator eval(model, inst.users);
      CostModel loose;
      loose.budget_e = 1e9;
      loose.budget_m = 8;
      const GroundSet ground(8, kTinyBits, loose);
      Rng rng(DeriveSeed(seed, 1));
      for (int j = 0; j < per_inst; ++j) {
        const Selection big = RandomSubset(ground, rng.Uniform(0.0, 0.5), rng);
        Selection small;
        for (const auto& t : big) {
          if (rng.Uniform() < 0.5) small.Insert(t);
        }
        std::vector<Tuple> outside;
        for (const auto& t : ground.tuples()) {
          if (!big.Contains(t)) outside.push_back(t);
        }
        if (outside.empty()) continue;
        const Tuple e = outside[rng.Index(outside.size())];
        const double hs = eval.HPrime(small), hse = eval.HPrime(small.With(e));
        const double hb = eval.HPrime(big), hbe = eval.HPrime(big.With(e));
        ++triples;
        const double excess = (hbe - hb) - (hse - hs);
        const double scale = std::max(1.0, std::abs(hbe));
        worst_dr = std::max(worst_dr, excess / scale);
        if (excess > tol::kSubmodularRel * scale) ++dr_violations;
        if (hse < hs - tol::kMonotoneRel * std::max(1.0, hs) || hbe < hb - tol::kMonotoneRel * std::max(1.0, hb) ||
            hb < hs - tol::kMonotoneRel * std::max(1.0, hs)) {
          ++mono_violations;
        }
      }
    }
    r.pass = dr_violations == 0 && mono_violations == 0;
    r.summary = Fmt("%d triples over %d instances; %d diminishing-returns and %d monotonicity violations; "
                    "max relative excess %.3g",
                    triples, n_inst, dr_violations, mono_violations, worst_dr);
  });
}

CheckResult CheckPruning(const VerifyOptions& opt) {
  return Timed(3, "pruning", [&](CheckResult& r) {
    const int n = Count(opt, 500, 50);
    int mismatches = 0, with_duplicates = 0;
    for (int i = 0; i < n; ++i) {
      const std::uint64_t seed = DeriveSeed(3003, i);
      const Instance inst = RandomInstance({8, 3, 2, 4, i % 2 == 0}, DeriveSeed(seed, 0));
      const AqnmModel model(inst);
      Rng rng(DeriveSeed(seed, 1));
      Selection s;
      const int n_beams = 1 + static_cast<int>(rng.Index(8));
      for (int k = 0; k < n_beams; ++k) {
        const int beam = static_cast<int>(rng.Index(8));
        const int copies = 1 + static_cast<int>(rng.Index(3));
        for (int c = 0; c < copies; ++c) s.Insert({beam, 1 + static_cast<int>(rng.Index(8))});
      }
      if (!s.MatroidFeasible()) ++with_duplicates;
      RateEvaluator raw(model, inst.users), pruned(model, inst.users);
      const double a = raw.HPrime(s);
      const double b = pruned.HPrime(Prune(s));
      if (!(a == b)) ++mismatches;
    }
    r.pass = mismatches == 0;
    r.summary = Fmt("%d selections (%d with repeated beams), %d not bit-identical", n, with_duplicates, mismatches);
  });
}

CheckResult CheckCornerPoint(const VerifyOptions& opt) {
  return Timed(4, "corner-point", [&](CheckResult& r) {
    const int n = Count(opt, 100, 10);
    int wsr_bad = 0, level_bad = 0, queue_bad = 0;
    double worst_wsr = 0.0, worst_level = 0.0;
    for (int i = 0; i < n; ++i) {
      const std::uint64_t seed = DeriveSeed(4004, i);
      RandomInstanceSpec spec{4, 3, 1 + static_cast<int>(i % 2), 2, true, 0.5, 12.0};
      const Instance inst = RandomInstance(spec, seed);
      const AqnmModel model(inst);
      RateEvaluator eval(model, inst.users);
      Rng rng(DeriveSeed(seed, 1));
      Selection s;
      for (int w = 0; w < 4; ++w) {
        if (rng.Uniform() < 0.6) s.Insert({w, 1 + static_cast<int>(rng.Index(6))});
      }
      const double wsr = eval.HPrime(s);
      const double best = oracle::PolymatroidMax(inst, AdcTable::Default(), s);
      const double dw = std::abs(wsr - best) / std::max(1.0, std::abs(best));
      worst_wsr = std::max(worst_wsr, dw);
      if (dw > tol::kCornerWsr) ++wsr_bad;

      const auto rates = eval.CornerRates(s).rates;
      const auto g = oracle::Levels(inst, AdcTable::Default(), s);
      const auto queues = inst.users.queues();
      double partial = 0.0;
      for (std::size_t l = 0; l < rates.size(); ++l) {
        partial += rates[l];
        const double dl = std::abs(partial - g[l]) / std::max(1.0, std::abs(g[l]));
        worst_level = std::max(worst_level, dl);
        if (dl > tol::kCornerLevels) ++level_bad;
        if (rates[l] > queues[l] + tol::kCornerLevels * std::max(1.0, queues[l])) ++queue_bad;
      }
    }
    r.pass = wsr_bad == 0 && level_bad == 0 && queue_bad == 0;
    r.summary = Fmt("%d instances (K=3, N=2); wsr vs vertex max: %d off (max rel %.2g); partial sums vs g: "
                    "%d off (max rel %.2g); %d rates above queue",
                    n, wsr_bad, worst_wsr, level_bad, worst_level, queue_bad);
  });
}

CheckResult CheckBeamVariance(const VerifyOptions& opt) {
  return Timed(5, "beam-variance", [&](CheckResult& r) {
    const int n = Count(opt, 200, 20);
    int bad = 0;
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
      Rng rng(DeriveSeed(5005, i));
      const int taps = 1 + static_cast<int>(rng.Index(8));
      const int subcarriers = taps + static_cast<int>(rng.Index(33 - taps));
      const int n_rx = 2 + static_cast<int>(rng.Index(5));
      const int users = 1 + static_cast<int>(rng.Index(4));
      std::vector<double> tap_power(taps);
      for (double& p : tap_power) p = rng.Uniform(0.1, 1.0);
      const auto channel = GenerateRayleigh(n_rx, users, taps, subcarriers, tap_power, rng.NextU64());
      std::vector<Eigen::VectorXd> loads(subcarriers, Eigen::VectorXd(users));
      for (auto& d : loads) {
        for (int k = 0; k < users; ++k) d(k) = rng.Uniform(0.0, 10.0);
      }
      const PowerProfile power(loads);
      CRowVector beam(n_rx);
      for (int j = 0; j < n_rx; ++j) beam(j) = rng.ComplexNormal();
      beam /= beam.norm();
      const double freq = ComputeBeamVariance(channel, power, beam).psi;
      const int t = static_cast<int>(rng.Index(subcarriers));
      const double time = oracle::TimeDomainPsi(channel, power, beam, t);
      const double rel = std::abs(freq - time) / std::abs(time);
      worst = std::max(worst, rel);
      if (rel > tol::kPsiRel) ++bad;
    }
    r.pass = bad == 0;
    r.summary = Fmt("%d instances (L <= 8, N <= 32); %d beyond %.0e relative; max rel %.2g", n, bad,
                    tol::kPsiRel, worst);
  });
}

CheckResult CheckLazyFidelity(const VerifyOptions& opt) {
  return Timed(6, "lazy-fidelity", [&](CheckResult& r) {
    const int n = Count(opt, 100, 10);
    int different = 0, fewer = 0;
    double ratio_sum = 0.0;
    const std::vector<int> bits = DynamicRange(4, 2);
    for (int i = 0; i < n; ++i) {
      const std::uint64_t seed = DeriveSeed(6006, i);
      const Instance inst = RandomInstance({16, 4, 2, 4, true, 1.0, 30.0}, seed);
      Rng rng(DeriveSeed(seed, 1));
      const CostModel cm = RandomCostModel(16, bits, 2 + static_cast<int>(rng.Index(5)), rng);
      const GroundSet ground(16, bits, cm);
      const AqnmModel model(inst);
      RateEvaluator lazy_eval(model, inst.users), full_eval(model, inst.users);
      JointOptions lazy_opt, full_opt;
      full_opt.lazy = false;
      const auto a = Algorithm1(lazy_eval, ground, cm, lazy_opt);
      const auto b = Algorithm1(full_eval, ground, cm, full_opt);
      bool same = a.trace.size() == b.trace.size() && a.selection == b.selection;
      for (std::size_t k = 0; same && k < a.trace.size(); ++k) same = a.trace[k].tuple == b.trace[k].tuple;
      if (!same) ++different;
      if (lazy_eval.evaluations() < full_eval.evaluations()) ++fewer;
      ratio_sum += static_cast<double>(lazy_eval.evaluations()) / std::max<std::uint64_t>(1, full_eval.evaluations());
    }
    const double frac = static_cast<double>(fewer) / n;
    r.pass = different == 0 && frac >= tol::kLazyFewerFraction;
    r.summary = Fmt("%d instances; %d sequences differ; fewer h' evaluations on %.0f%%; mean evaluation ratio %.3f",
                    n, different, 100.0 * frac, ratio_sum / n);
  });
}

CheckResult CheckResolutionTrend(const VerifyOptions& opt) {
  return Timed(7, "resolution-sweep", [&](CheckResult& r) {
    ExperimentConfig cfg;
    cfg.b_ref.clear();
    for (int b = 1; b <= 11; ++b) cfg.b_ref.push_back(b);
    cfg.delta = 3;
    cfg.n_drops = Count(opt, 50, 3);
    cfg.seed = 7007;
    if (opt.quick) {
      cfg.n_rx = 16;
      cfg.n_chains = cfg.chain_cap = 8;
    }
    const auto sweep = RunSweep(cfg, "bref");
    auto mean = [&](int b, const char* algo) {
      for (const auto& row : sweep.rows) {
        if (row.axis_value == b && row.algo == algo) return row.mean_wsr_bps_hz;
      }
      return std::nan("");
    };
    int order_bad = 0;
    std::string worst;
    for (int b : cfg.b_ref) {
      const double j = mean(b, "joint"), q = mean(b, "qafas"), x = mean(b, "random");
      if (!(j >= q && q >= x)) {
        ++order_bad;
        worst += Fmt(" [b_ref=%d joint %.4f qafas %.4f random %.4f]", b, j, q, x);
      }
    }
    const double gain3 = mean(3, "joint") / mean(3, "qafas") - 1.0;
    r.pass = order_bad == 0 && gain3 > 0.0;
    r.summary = Fmt("%d drops x 11 b_ref; ordering broken at %d points; joint gain over QAFAS at b_ref=3: %+.2f%%",
                    cfg.n_drops, order_bad, 100.0 * gain3) +
                worst;
  });
}

CheckResult CheckEnergySaving(const VerifyOptions& opt) {
  return Timed(8, "energy-saving", [&](CheckResult& r) {
    ExperimentConfig cfg;
    cfg.scenario = "geometric";
    cfg.n_taps = 1;
    cfg.b_ref = {8};
    cfg.delta = 4;
    cfg.n_drops = Count(opt, 50, 5);
    cfg.seed = 8008;
    int lower = 0;
    double wj = 0.0, wq = 0.0, ratio_sum = 0.0;
    for (int d = 0; d < cfg.n_drops; ++d) {
      const auto drop = RunDrop(cfg, d, {"joint", "qafas"});
      const auto& j = drop.Get("joint");
      const auto& q = drop.Get("qafas");
      const double ratio = j.energy / q.energy;
      ratio_sum += ratio;
      if (ratio < 1.0) ++lower;
      wj += j.wsr_bps_hz;
      wq += q.wsr_bps_hz;
    }
    const double frac = static_cast<double>(lower) / cfg.n_drops;
    const double rel = wj / wq - 1.0;
    r.pass = frac >= tol::kEnergyFraction && rel >= -tol::kWsrSlack;
    r.summary = Fmt("%d drops at b_ref=8; energy ratio < 1 on %.0f%% (mean ratio %.3f); mean wsr joint vs QAFAS "
                    "%+.2f%%",
                    cfg.n_drops, 100.0 * frac, ratio_sum / cfg.n_drops, 100.0 * rel);
  });
}

CheckResult CheckAdcTable(const VerifyOptions&) {
  return Timed(9, "adc-table", [&](CheckResult& r) {
    const AdcTable& table = AdcTable::Default();
    bool increasing = true;
    for (int b = 1; b < 12; ++b) increasing = increasing && AlphaOf(b, table) < AlphaOf(b + 1, table);
    increasing = increasing && AlphaOf(12, table) < AlphaOf(kInfiniteBits, table);
    double worst = 0.0;
    for (int b = 1; b <= 5; ++b) worst = std::max(worst, std::abs(table.alpha(b) - (1.0 - oracle::LloydMaxMse(b))));
    bool t_increasing = true;
    for (double psi : {1.0, 4.0, 100.0}) {
      for (int b = 1; b < 12; ++b) {
        t_increasing = t_increasing && EffectiveGain(AlphaOf(b, table), {psi}) <
                                           EffectiveGain(AlphaOf(b + 1, table), {psi});
      }
    }
    r.pass = increasing && worst <= tol::kLutOracle && t_increasing;
    r.summary = Fmt("alpha increasing: %s; max |LUT - Lloyd-Max oracle| %.2g; t increasing for psi in {1,4,100}: %s",
                    increasing ? "yes" : "no", worst, t_increasing ? "yes" : "no");
  });
}

CheckResult CheckDeterminism(const VerifyOptions&) {
  return Timed(10, "determinism", [&](CheckResult& r) {
    ExperimentConfig cfg;
    cfg.n_rx = 8;
    cfg.n_users = 3;
    cfg.n_chains = cfg.chain_cap = 4;
    cfg.n_subcarriers = 4;
    cfg.n_taps = 2;
    cfg.b_ref = {2, 4};
    cfg.n_drops = 3;
    cfg.seed = 1010;
    const std::string a = SweepCsv(RunSweep(cfg, "bref").rows);
    const std::string b = SweepCsv(RunSweep(cfg, "bref").rows);
    r.pass = a == b;
    r.summary = Fmt("two sweeps, %zu bytes each: %s", a.size(), a == b ? "identical" : "different");
  });
}

std::vector<CheckResult> RunChecks(const VerifyOptions& opt, const std::vector<int>& only,
                                   const std::function<void(const CheckResult&)>& on_result) {
  const std::vector<std::function<CheckResult(const VerifyOptions&)>> checks = {
      CheckOracleGap,  CheckSubmodularity,   CheckPruning,      CheckCornerPoint, CheckBeamVariance,
      CheckLazyFidelity, CheckResolutionTrend, CheckEnergySaving, CheckAdcTable,    CheckDeterminism};
  std::vector<CheckResult> out;
  for (std::size_t i = 0; i < checks.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) continue;
    out.push_back(checks[i](opt));
    if (on_result) on_result(out.back());
  }
  return out;
}

std::string FormatResult(const CheckResult& r) {
  return Fmt("[%s] %2d %-17s %s (%.1f s)", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(), r.summary.c_str(),
             r.seconds);
}

}  // namespace beambit
