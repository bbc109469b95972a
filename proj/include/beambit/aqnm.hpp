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

// Additive quantization noise model (AQNM).
//
// An ADC with resolution b is linearized as  y_q = alpha(b) * y + n_q  where
// the quantization noise n_q is uncorrelated with y. For a beam output with
// time-domain variance psi the noise-plus-distortion variance after
// quantization is  gamma = alpha^2 + alpha (1 - alpha) psi  and whitening
// leaves an effective power gain  t = alpha^2 / gamma  on that beam. psi of a
// beam depends only on that beam, so t is a per-(beam, bits) quantity.

#ifndef BEAMBIT_AQNM_HPP_
#define BEAMBIT_AQNM_HPP_

#include <vector>

#include "beambit/instance.hpp"
#include "beambit/selection.hpp"
#include "json.hpp"

namespace beambit {

// Result of a Lloyd-Max design for a unit-variance real Gaussian source.
struct LloydMaxQuantizer {
  std::vector<double> levels;      // 2^b reconstruction points, ascending
  std::vector<double> thresholds;  // 2^b - 1 decision boundaries
  double mse = 0.0;
  int iterations = 0;
};

// Fixed-point (Lloyd) iteration using closed-form Gaussian cell moments.
LloydMaxQuantizer DesignLloydMax(int bits, double tol = 1e-10, int max_iter = 10000);

// Monotone map from ADC resolution to the AQNM scalar alpha.
class AdcTable {
 public:
  // lut[i] is alpha for b = i + 1; b_lut_max = lut.size().
  AdcTable(std::vector<double> lut, double a_const);

  // Lloyd-Max table for b = 1..5 and a = pi sqrt(3) / 2.
  static const AdcTable& Default();
  static double DefaultAConst();

  double alpha(int bits) const;
  const std::vector<double>& lut() const { return lut_; }
  double a_const() const { return a_const_; }
  int b_lut_max() const { return static_cast<int>(lut_.size()); }

 private:
  std::vector<double> lut_;
  double a_const_;
};

// alpha for b <= b_lut_max from the table, 1 - a 2^{-2b} above it and 1 for
// kInfiniteBits. Throws std::domain_error for b <= 0.
double AlphaOf(int bits, const AdcTable& table);

nlohmann::json AdcTableToJson(const AdcTable& table);
AdcTable AdcTableFromJson(const nlohmann::json& doc);

// Variance of the time-domain output along one beam (noise power 1).
struct BeamVariance {
  double psi = 1.0;
};

// psi = 1 + (1/N) sum_n |w G_n D_n^{1/2}|^2.
BeamVariance ComputeBeamVariance(const ChannelRealization& channel,
                                 const PowerProfile& power,
                                 const CRowVector& beam);

// t = alpha^2 / (alpha^2 + alpha (1 - alpha) psi).
double EffectiveGain(double alpha, BeamVariance psi);

// Rows: distinct beams of the pruned selection in ascending beam id.
// Columns: users in sorted-weight order.
struct EffectiveChannel {
  std::vector<CMatrix> per_subcarrier;
  std::vector<int> beam_order;

  int rows() const { return static_cast<int>(beam_order.size()); }
};

// Per-instance cache of everything that depends on a single beam: the
// projected responses  w G_n D_n^{1/2}  and psi. Filled at construction and
// immutable afterwards, so one model can be shared across threads.
class AqnmModel {
 public:
  AqnmModel(const Instance& instance, AdcTable table = AdcTable::Default());

  int n_beams() const { return static_cast<int>(psi_.size()); }
  int n_users() const { return n_users_; }
  int n_subcarriers() const { return n_subcarriers_; }
  const AdcTable& table() const { return table_; }

  BeamVariance psi(int beam) const;
  // Effective gain t of a (beam, bits) tuple.
  double gain(const Tuple& t) const;
  // N x K: row n-1 holds w G_n D_n^{1/2}, users in sorted-weight order.
  const CMatrix& projected(int beam) const;

  // Empty selection -> zero-row channel.
  EffectiveChannel Whiten(const Selection& selection) const;

 private:
  AdcTable table_;
  int n_users_;
  int n_subcarriers_;
  std::vector<double> psi_;
  std::vector<CMatrix> projected_;
};

EffectiveChannel WhitenedChannel(const Selection& selection, const Instance& instance,
                                 const AdcTable& table = AdcTable::Default());

}  // namespace beambit

#endif  // BEAMBIT_AQNM_HPP_
