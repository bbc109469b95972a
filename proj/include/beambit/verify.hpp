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

// Acceptance checks shared by `beambit verify` and the acceptance test.

#ifndef BEAMBIT_VERIFY_HPP_
#define BEAMBIT_VERIFY_HPP_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "beambit/instance.hpp"
#include "beambit/rng.hpp"
#include "beambit/select.hpp"

namespace beambit {

namespace tol {
inline constexpr double kOracleGapFactor = 0.155;
inline constexpr double kSubmodularRel = 1e-7;
inline constexpr double kMonotoneRel = 1e-9;
inline constexpr double kCornerWsr = 1e-6;
inline constexpr double kCornerLevels = 1e-9;
inline constexpr double kPsiRel = 1e-9;
inline constexpr double kLazyFewerFraction = 0.9;
inline constexpr double kEnergyFraction = 0.8;
inline constexpr double kWsrSlack = 0.02;
inline constexpr double kLutOracle = 1e-4;
}  // namespace tol

struct CheckResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string summary;
  double seconds = 0.0;
};

struct VerifyOptions {
  // Fewer instances and drops; for smoke runs, not for acceptance.
  bool quick = false;
};

// Random test instance: Rayleigh taps with a random power-delay profile,
// DFT codebook, per-user SNR in [-5, 20] dB, weights in [0.5, 2]. With
// finite_queues each user independently gets a queue in [q_lo, q_hi] bits
// with probability 1/2.
struct RandomInstanceSpec {
  int n_rx = 8;
  int n_users = 3;
  int n_taps = 2;
  int n_subcarriers = 4;
  bool finite_queues = true;
  double q_lo = 1.0;
  double q_hi = 20.0;
};
Instance RandomInstance(const RandomInstanceSpec& spec, std::uint64_t seed);

// Random beam costs in [0.5, 1.5], theta in [0.05, 0.5], switching costs in
// [0, 0.2], chain cap `chain_cap`, and an energy budget that is a random
// fraction in [0.25, 1] of the cost of the chain_cap most expensive tuples.
CostModel RandomCostModel(int n_beams, const std::vector<int>& bits, int chain_cap, Rng& rng);

CheckResult CheckOracleGap(const VerifyOptions& opt = {});
CheckResult CheckSubmodularity(const VerifyOptions& opt = {});
CheckResult CheckPruning(const VerifyOptions& opt = {});
CheckResult CheckCornerPoint(const VerifyOptions& opt = {});
CheckResult CheckBeamVariance(const VerifyOptions& opt = {});
CheckResult CheckLazyFidelity(const VerifyOptions& opt = {});
CheckResult CheckResolutionTrend(const VerifyOptions& opt = {});
CheckResult CheckEnergySaving(const VerifyOptions& opt = {});
CheckResult CheckAdcTable(const VerifyOptions& opt = {});
CheckResult CheckDeterminism(const VerifyOptions& opt = {});

// Runs the checks in order; `only` selects ids (empty = all).
std::vector<CheckResult> RunChecks(const VerifyOptions& opt, const std::vector<int>& only = {},
                                   const std::function<void(const CheckResult&)>& on_result = {});

// "[PASS] 1 oracle-gap: ... (2.1 s)"
std::string FormatResult(const CheckResult& r);

}  // namespace beambit

#endif  // BEAMBIT_VERIFY_HPP_
