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

#include "beambit/aqnm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace beambit {

namespace {

double NormalPdf(double x) {
  if (std::isinf(x)) return 0.0;
  return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
}

double NormalCdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

constexpr int kDefaultLutBits = 5;

}  // namespace

LloydMaxQuantizer DesignLloydMax(int bits, double tol, int max_iter) {
  if (bits < 1 || bits > 16) throw std::domain_error("Lloyd-Max design supports 1..16 bits");
  const int n = 1 << bits;
  LloydMaxQuantizer q;
  q.levels.resize(n);
  q.thresholds.resize(n - 1);
  // Uniform start spanning roughly +-3 sigma.
  const double span = 3.0;
  for (int i = 0; i < n; ++i) q.levels[i] = -span + (2.0 * span) * (i + 0.5) / n;

  std::vector<double> edges(n + 1);
  edges.front() = -std::numeric_limits<double>::infinity();
  edges.back() = std::numeric_limits<double>::infinity();
  for (int it = 1; it <= max_iter; ++it) {
    for (int i = 0; i + 1 < n; ++i) edges[i + 1] = 0.5 * (q.levels[i] + q.levels[i + 1]);
    double delta = 0.0;
    for (int i = 0; i < n; ++i) {
      const double mass = NormalCdf(edges[i + 1]) - NormalCdf(edges[i]);
      const double centroid = (NormalPdf(edges[i]) - NormalPdf(edges[i + 1])) / mass;
      delta = std::max(delta, std::abs(centroid - q.levels[i]));
      q.levels[i] = centroid;
    }
    q.iterations = it;
    if (delta < tol) break;
  }
  for (int i = 0; i + 1 < n; ++i) {
    edges[i + 1] = 0.5 * (q.levels[i] + q.levels[i + 1]);
    q.thresholds[i] = edges[i + 1];
  }
  // With centroid reconstruction, MSE = 1 - sum_i P_i c_i^2.
  double preserved = 0.0;
  for (int i = 0; i < n; ++i) {
    const double mass = NormalCdf(edges[i + 1]) - NormalCdf(edges[i]);
    const double centroid = (NormalPdf(edges[i]) - NormalPdf(edges[i + 1])) / mass;
    preserved += mass * centroid * centroid;
  }
  q.mse = 1.0 - preserved;
  return q;
}

AdcTable::AdcTable(std::vector<double> lut, double a_const)
    : lut_(std::move(lut)), a_const_(a_const) {
  if (lut_.empty()) throw std::invalid_argument("ADC look-up table is empty");
  if (!(a_const_ > 0.0)) throw std::invalid_argument("a_const must be positive");
  for (std::size_t i = 0; i < lut_.size(); ++i) {
    if (!(lut_[i] > 0.0 && lut_[i] < 1.0)) {
      throw std::invalid_argument("LUT entries must lie in (0, 1)");
    }
    if (i > 0 && !(lut_[i] > lut_[i - 1])) {
      throw std::invalid_argument("LUT must be strictly increasing");
    }
  }
  const int first_formula = b_lut_max() + 1;
  const double boundary = 1.0 - a_const_ * std::ldexp(1.0, -2 * first_formula);
  if (!(boundary > lut_.back()) || !(boundary > 0.0)) {
    throw std::invalid_argument("alpha must keep increasing across the LUT/formula boundary");
  }
}

const AdcTable& AdcTable::Default() {
  static const AdcTable table = [] {
    std::vector<double> lut;
    for (int b = 1; b <= kDefaultLutBits; ++b) lut.push_back(1.0 - DesignLloydMax(b).mse);
    return AdcTable(std::move(lut), DefaultAConst());
  }();
  return table;
}

double AdcTable::DefaultAConst() { return std::numbers::pi * std::sqrt(3.0) / 2.0; }

double AdcTable::alpha(int bits) const {
  if (bits == kInfiniteBits) return 1.0;
  if (bits <= 0) throw std::domain_error("ADC resolution must be positive, got " + std::to_string(bits));
  if (bits <= b_lut_max()) return lut_[bits - 1];
  return 1.0 - a_const_ * std::ldexp(1.0, -2 * bits);
}

double AlphaOf(int bits, const AdcTable& table) { return table.alpha(bits); }

nlohmann::json AdcTableToJson(const AdcTable& table) {
  nlohmann::json lut = nlohmann::json::object();
  for (int b = 1; b <= table.b_lut_max(); ++b) lut[std::to_string(b)] = table.lut()[b - 1];
  return {{"lut", lut}, {"a_const", table.a_const()}, {"b_lut_max", table.b_lut_max()}};
}

AdcTable AdcTableFromJson(const nlohmann::json& doc) {
  const int b_max = doc.at("b_lut_max").get<int>();
  std::vector<double> lut;
  for (int b = 1; b <= b_max; ++b) lut.push_back(doc.at("lut").at(std::to_string(b)).get<double>());
  return AdcTable(std::move(lut), doc.at("a_const").get<double>());
}

BeamVariance ComputeBeamVariance(const ChannelRealization& channel,
                                 const PowerProfile& power, const CRowVector& beam) {
  if (beam.size() != channel.n_rx()) throw std::invalid_argument("beam length must equal n_rx");
  if (power.n_subcarriers() != channel.n_subcarriers() || power.n_users() != channel.n_users()) {
    throw std::invalid_argument("power profile does not match channel");
  }
  const int num = channel.n_subcarriers();
  double acc = 0.0;
  for (int n = 1; n <= num; ++n) {
    const CRowVector v = beam * FreqResponse(channel, n);
    acc += (v.cwiseAbs2().transpose().array() * power.at(n).array()).sum();
  }
  return {1.0 + acc / num};
}

double EffectiveGain(double alpha, BeamVariance psi) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw std::domain_error("alpha must lie in (0, 1]");
  if (!(psi.psi >= 1.0)) throw std::domain_error("psi must be at least 1");
  if (alpha == 1.0) return 1.0;
  // t = alpha^2 / gamma simplified by alpha.
  return alpha / (alpha + (1.0 - alpha) * psi.psi);
}

AqnmModel::AqnmModel(const Instance& instance, AdcTable table)
    : table_(std::move(table)),
      n_users_(instance.channel.n_users()),
      n_subcarriers_(instance.channel.n_subcarriers()) {
  instance.Validate();
  const auto& order = instance.users.order();
  std::vector<CMatrix> g;
  g.reserve(n_subcarriers_);
  for (int n = 1; n <= n_subcarriers_; ++n) {
    const CMatrix gn = FreqResponse(instance.channel, n);
    const Eigen::VectorXd sqrt_d = instance.power.at(n).cwiseSqrt();
    // Columns permuted into sorted-weight order and scaled by D_n^{1/2}.
    CMatrix scaled(gn.rows(), n_users_);
    for (int j = 0; j < n_users_; ++j) scaled.col(j) = gn.col(order[j]) * sqrt_d(order[j]);
    g.push_back(std::move(scaled));
  }
  const int n_beams = instance.codebook.size();
  psi_.resize(n_beams);
  projected_.resize(n_beams);
  for (int m = 0; m < n_beams; ++m) {
    const CRowVector& w = instance.codebook.beam(m);
    CMatrix rows(n_subcarriers_, n_users_);
    double acc = 0.0;
    for (int n = 0; n < n_subcarriers_; ++n) {
      rows.row(n) = w * g[n];
      acc += rows.row(n).squaredNorm();
    }
    psi_[m] = 1.0 + acc / n_subcarriers_;
    projected_[m] = std::move(rows);
  }
}

BeamVariance AqnmModel::psi(int beam) const {
  if (beam < 0 || beam >= n_beams()) throw std::out_of_range("beam id out of range");
  return {psi_[beam]};
}

double AqnmModel::gain(const Tuple& t) const {
  return EffectiveGain(table_.alpha(t.bits), psi(t.beam));
}

const CMatrix& AqnmModel::projected(int beam) const {
  if (beam < 0 || beam >= n_beams()) throw std::out_of_range("beam id out of range");
  return projected_[beam];
}

EffectiveChannel AqnmModel::Whiten(const Selection& selection) const {
  const Selection pruned = Prune(selection);
  EffectiveChannel out;
  out.per_subcarrier.assign(n_subcarriers_, CMatrix(pruned.size(), n_users_));
  int r = 0;
  for (const auto& t : pruned) {
    const double scale = std::sqrt(gain(t));
    const CMatrix& rows = projected(t.beam);
    for (int n = 0; n < n_subcarriers_; ++n) out.per_subcarrier[n].row(r) = scale * rows.row(n);
    out.beam_order.push_back(t.beam);
    ++r;
  }
  return out;
}

EffectiveChannel WhitenedChannel(const Selection& selection, const Instance& instance,
                                 const AdcTable& table) {
  return AqnmModel(instance, table).Whiten(selection);
}

}  // namespace beambit
