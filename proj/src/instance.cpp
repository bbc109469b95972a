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

#include "beambit/instance.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

#include "beambit/rng.hpp"

namespace beambit {

namespace {

constexpr double kOrthogonalityTol = 1e-9;
constexpr double kUnitNormTol = 1e-12;

std::complex<double> Phase(double angle) {
  return {std::cos(angle), std::sin(angle)};
}

}  // namespace

ChannelRealization::ChannelRealization(std::vector<CMatrix> taps,
                                       int n_subcarriers)
    : taps_(std::move(taps)), n_subcarriers_(n_subcarriers) {
  if (taps_.empty()) throw std::invalid_argument("channel needs at least one tap");
  if (n_subcarriers_ < 1) throw std::invalid_argument("n_subcarriers must be positive");
  if (static_cast<int>(taps_.size()) > n_subcarriers_) {
    throw std::invalid_argument("number of taps exceeds number of subcarriers");
  }
  const auto rows = taps_.front().rows();
  const auto cols = taps_.front().cols();
  if (rows < 1 || cols < 1) throw std::invalid_argument("empty channel tap");
  for (const auto& tap : taps_) {
    if (tap.rows() != rows || tap.cols() != cols) {
      throw std::invalid_argument("channel taps differ in shape");
    }
  }
}

PowerProfile::PowerProfile(std::vector<Eigen::VectorXd> loads)
    : loads_(std::move(loads)) {
  if (loads_.empty()) throw std::invalid_argument("power profile is empty");
  const auto k = loads_.front().size();
  if (k < 1) throw std::invalid_argument("power profile has no users");
  for (const auto& d : loads_) {
    if (d.size() != k) throw std::invalid_argument("power profile rows differ in length");
    if ((d.array() < 0.0).any() || !d.allFinite()) {
      throw std::invalid_argument("power loads must be finite and nonnegative");
    }
  }
}

PowerProfile PowerProfile::Flat(int n_subcarriers, const Eigen::VectorXd& per_user) {
  if (n_subcarriers < 1) throw std::invalid_argument("n_subcarriers must be positive");
  return PowerProfile(std::vector<Eigen::VectorXd>(n_subcarriers, per_user));
}

const Eigen::VectorXd& PowerProfile::at(int n) const {
  if (n < 1 || n > n_subcarriers()) throw std::out_of_range("subcarrier index out of range");
  return loads_[n - 1];
}

BeamCodebook::BeamCodebook(std::vector<CRowVector> beams, std::string kind)
    : beams_(std::move(beams)), kind_(std::move(kind)) {
  if (beams_.empty()) throw std::invalid_argument("codebook is empty");
  const auto n = beams_.front().size();
  if (static_cast<std::size_t>(n) < beams_.size()) {
    throw std::invalid_argument("codebook has more beams than receive antennas");
  }
  for (std::size_t i = 0; i < beams_.size(); ++i) {
    if (beams_[i].size() != n) throw std::invalid_argument("codebook beams differ in length");
    if (std::abs(beams_[i].norm() - 1.0) > kUnitNormTol) {
      throw std::invalid_argument("codebook beam " + std::to_string(i) + " is not unit norm");
    }
    for (std::size_t j = 0; j < i; ++j) {
      // Rows are compared as w_i w_j^H.
      if (std::abs(beams_[i].dot(beams_[j])) > kOrthogonalityTol) {
        throw std::invalid_argument("codebook beams are not mutually orthogonal");
      }
    }
  }
}

const CRowVector& BeamCodebook::beam(int id) const {
  if (id < 0 || id >= size()) throw std::out_of_range("beam id out of range");
  return beams_[id];
}

UserState::UserState(std::vector<double> weights, std::vector<double> queues) {
  if (weights.empty()) throw std::invalid_argument("no users");
  if (weights.size() != queues.size()) {
    throw std::invalid_argument("weights and queues differ in length");
  }
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw std::invalid_argument("weights must be finite and nonnegative");
  }
  for (double q : queues) {
    if (!(q > 0.0)) throw std::invalid_argument("queues must be strictly positive");
  }
  order_.resize(weights.size());
  std::iota(order_.begin(), order_.end(), 0);
  std::stable_sort(order_.begin(), order_.end(),
                   [&](int a, int b) { return weights[a] > weights[b]; });
  for (int id : order_) {
    weights_.push_back(weights[id]);
    queues_.push_back(queues[id]);
  }
}

UserState UserState::FullBuffer(std::vector<double> weights) {
  std::vector<double> queues(weights.size(), kInfiniteQueue);
  return UserState(std::move(weights), std::move(queues));
}

double UserState::weight(int l) const {
  if (l == size()) return 0.0;
  if (l < 0 || l > size()) throw std::out_of_range("user index out of range");
  return weights_[l];
}

bool UserState::full_buffer() const {
  return std::all_of(queues_.begin(), queues_.end(),
                     [](double q) { return std::isinf(q); });
}

std::vector<double> UserState::original_weights() const {
  std::vector<double> out(weights_.size());
  for (std::size_t i = 0; i < order_.size(); ++i) out[order_[i]] = weights_[i];
  return out;
}

std::vector<double> UserState::original_queues() const {
  std::vector<double> out(queues_.size());
  for (std::size_t i = 0; i < order_.size(); ++i) out[order_[i]] = queues_[i];
  return out;
}

void Instance::Validate() const {
  if (power.n_subcarriers() != channel.n_subcarriers()) {
    throw std::invalid_argument("power profile and channel disagree on N");
  }
  if (power.n_users() != channel.n_users() || users.size() != channel.n_users()) {
    throw std::invalid_argument("instance parts disagree on the number of users");
  }
  if (codebook.n_rx() != channel.n_rx()) {
    throw std::invalid_argument("codebook and channel disagree on N_r");
  }
}

CMatrix FreqResponse(const ChannelRealization& channel, int n) {
  const int num = channel.n_subcarriers();
  if (n < 1 || n > num) throw std::out_of_range("subcarrier index out of range");
  CMatrix g = channel.taps().front();
  for (int l = 1; l < channel.n_taps(); ++l) {
    // Reduce the exponent mod N so the phase is exact for large n*l.
    const long long k = (static_cast<long long>(n - 1) * l) % num;
    g += channel.taps()[l] * Phase(-2.0 * std::numbers::pi * static_cast<double>(k) / num);
  }
  return g;
}

ChannelRealization GenerateRayleigh(int n_rx, int n_users, int n_taps,
                                    int n_subcarriers,
                                    std::span<const double> tap_power,
                                    std::uint64_t seed) {
  if (n_rx < 1 || n_users < 1 || n_taps < 1 || n_subcarriers < 1) {
    throw std::invalid_argument("dimensions must be positive");
  }
  if (static_cast<int>(tap_power.size()) != n_taps) {
    throw std::invalid_argument("tap power profile length must equal n_taps");
  }
  Rng rng(seed);
  std::vector<CMatrix> taps;
  taps.reserve(n_taps);
  for (int l = 0; l < n_taps; ++l) {
    if (!(tap_power[l] >= 0.0)) throw std::invalid_argument("tap powers must be nonnegative");
    const double scale = std::sqrt(tap_power[l]);
    CMatrix h(n_rx, n_users);
    for (int k = 0; k < n_users; ++k) {
      for (int r = 0; r < n_rx; ++r) h(r, k) = scale * rng.ComplexNormal();
    }
    taps.push_back(std::move(h));
  }
  return ChannelRealization(std::move(taps), n_subcarriers);
}

ChannelRealization GenerateRayleigh(int n_rx, int n_users, int n_taps,
                                    int n_subcarriers, std::uint64_t seed) {
  if (n_taps < 1) throw std::invalid_argument("dimensions must be positive");
  std::vector<double> profile(n_taps, 1.0 / n_taps);
  return GenerateRayleigh(n_rx, n_users, n_taps, n_subcarriers, profile, seed);
}

CRowVector SteeringVector(int n_rx, double u) {
  CRowVector a(n_rx);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n_rx));
  for (int k = 0; k < n_rx; ++k) a(k) = scale * Phase(std::numbers::pi * k * u);
  return a;
}

ChannelRealization GeometricChannel(
    int n_rx, const std::vector<std::vector<PathSpec>>& paths_per_user,
    int n_subcarriers) {
  if (n_rx < 1 || paths_per_user.empty()) throw std::invalid_argument("dimensions must be positive");
  CMatrix h = CMatrix::Zero(n_rx, static_cast<Eigen::Index>(paths_per_user.size()));
  for (std::size_t k = 0; k < paths_per_user.size(); ++k) {
    const auto& paths = paths_per_user[k];
    if (paths.empty()) throw std::invalid_argument("every user needs at least one path");
    const double scale = std::sqrt(static_cast<double>(n_rx) / paths.size());
    for (const auto& p : paths) {
      h.col(static_cast<Eigen::Index>(k)) += (scale * p.gain) * SteeringVector(n_rx, p.u).transpose();
    }
  }
  return ChannelRealization({std::move(h)}, n_subcarriers);
}

ChannelRealization GenerateGeometric(int n_rx, int n_users,
                                     int n_paths_per_user, std::uint64_t seed,
                                     int n_subcarriers) {
  if (n_users < 1 || n_paths_per_user < 1) throw std::invalid_argument("dimensions must be positive");
  Rng rng(seed);
  std::vector<std::vector<PathSpec>> paths(n_users);
  for (auto& user : paths) {
    for (int p = 0; p < n_paths_per_user; ++p) {
      const auto gain = rng.ComplexNormal();
      const double angle = rng.Uniform(-std::numbers::pi / 2, std::numbers::pi / 2);
      user.push_back({gain, std::sin(angle)});
    }
  }
  return GeometricChannel(n_rx, paths, n_subcarriers);
}

BeamCodebook DftCodebook(int n_rx) {
  if (n_rx < 1) throw std::invalid_argument("n_rx must be positive");
  const double scale = 1.0 / std::sqrt(static_cast<double>(n_rx));
  std::vector<CRowVector> beams;
  beams.reserve(n_rx);
  for (int m = 0; m < n_rx; ++m) {
    CRowVector w(n_rx);
    for (int k = 0; k < n_rx; ++k) {
      const long long e = (static_cast<long long>(m) * k) % n_rx;
      w(k) = scale * Phase(-2.0 * std::numbers::pi * static_cast<double>(e) / n_rx);
    }
    beams.push_back(std::move(w));
  }
  return BeamCodebook(std::move(beams), "dft");
}

BeamCodebook IdentityCodebook(int n_rx) {
  if (n_rx < 1) throw std::invalid_argument("n_rx must be positive");
  std::vector<CRowVector> beams;
  beams.reserve(n_rx);
  for (int m = 0; m < n_rx; ++m) {
    CRowVector w = CRowVector::Zero(n_rx);
    w(m) = 1.0;
    beams.push_back(std::move(w));
  }
  return BeamCodebook(std::move(beams), "identity");
}

// ---------------------------------------------------------------------------
// JSON

namespace {

using nlohmann::json;

json ComplexMatrixToJson(const CMatrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      row.push_back({m(r, c).real(), m(r, c).imag()});
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

CMatrix ComplexMatrixFromJson(const json& rows, int n_rows, int n_cols) {
  if (!rows.is_array() || static_cast<int>(rows.size()) != n_rows) {
    throw std::invalid_argument("complex matrix has wrong row count");
  }
  CMatrix m(n_rows, n_cols);
  for (int r = 0; r < n_rows; ++r) {
    const auto& row = rows[r];
    if (!row.is_array() || static_cast<int>(row.size()) != n_cols) {
      throw std::invalid_argument("complex matrix has wrong column count");
    }
    for (int c = 0; c < n_cols; ++c) {
      const auto& z = row[c];
      if (!z.is_array() || z.size() != 2) throw std::invalid_argument("complex entry must be [re, im]");
      m(r, c) = {z[0].get<double>(), z[1].get<double>()};
    }
  }
  return m;
}

json QueueToJson(double q) {
  if (std::isinf(q)) return "inf";
  return q;
}

double QueueFromJson(const json& v) {
  if (v.is_string()) {
    if (v.get<std::string>() == "inf") return kInfiniteQueue;
    throw std::invalid_argument("queue sentinel must be \"inf\"");
  }
  return v.get<double>();
}

}  // namespace

nlohmann::json InstanceToJson(const Instance& instance) {
  instance.Validate();
  const auto& ch = instance.channel;
  json doc;
  doc["n_rx"] = ch.n_rx();
  doc["n_users"] = ch.n_users();
  doc["n_taps"] = ch.n_taps();
  doc["n_subcarriers"] = ch.n_subcarriers();
  json taps = json::array();
  for (const auto& tap : ch.taps()) taps.push_back(ComplexMatrixToJson(tap));
  doc["taps"] = std::move(taps);
  json power = json::array();
  for (const auto& d : instance.power.loads()) {
    power.push_back(std::vector<double>(d.data(), d.data() + d.size()));
  }
  doc["power"] = std::move(power);
  const auto& cb = instance.codebook;
  if (!cb.kind().empty()) {
    doc["codebook"] = cb.kind();
  } else {
    CMatrix rows(cb.size(), cb.n_rx());
    for (int m = 0; m < cb.size(); ++m) rows.row(m) = cb.beam(m);
    doc["codebook"] = ComplexMatrixToJson(rows);
  }
  doc["weights"] = instance.users.original_weights();
  json queues = json::array();
  for (double q : instance.users.original_queues()) queues.push_back(QueueToJson(q));
  doc["queues"] = std::move(queues);
  return doc;
}

Instance InstanceFromJson(const nlohmann::json& doc) {
  const int n_rx = doc.at("n_rx").get<int>();
  const int n_users = doc.at("n_users").get<int>();
  const int n_taps = doc.at("n_taps").get<int>();
  const int n_sub = doc.at("n_subcarriers").get<int>();
  const auto& taps_json = doc.at("taps");
  if (!taps_json.is_array() || static_cast<int>(taps_json.size()) != n_taps) {
    throw std::invalid_argument("\"taps\" must hold n_taps matrices");
  }
  std::vector<CMatrix> taps;
  for (const auto& t : taps_json) taps.push_back(ComplexMatrixFromJson(t, n_rx, n_users));

  std::vector<Eigen::VectorXd> loads;
  for (const auto& row : doc.at("power")) {
    const auto v = row.get<std::vector<double>>();
    loads.push_back(Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size())));
  }

  const auto& cb_json = doc.at("codebook");
  BeamCodebook codebook = [&] {
    if (cb_json.is_string()) {
      const auto kind = cb_json.get<std::string>();
      if (kind == "dft") return DftCodebook(n_rx);
      if (kind == "identity") return IdentityCodebook(n_rx);
      throw std::invalid_argument("unknown codebook kind: " + kind);
    }
    const int n_beams = static_cast<int>(cb_json.size());
    const CMatrix rows = ComplexMatrixFromJson(cb_json, n_beams, n_rx);
    std::vector<CRowVector> beams;
    for (int m = 0; m < n_beams; ++m) beams.push_back(rows.row(m));
    return BeamCodebook(std::move(beams));
  }();

  auto weights = doc.at("weights").get<std::vector<double>>();
  std::vector<double> queues;
  for (const auto& q : doc.at("queues")) queues.push_back(QueueFromJson(q));

  Instance inst{ChannelRealization(std::move(taps), n_sub), PowerProfile(std::move(loads)),
                std::move(codebook), UserState(std::move(weights), std::move(queues))};
  inst.Validate();
  return inst;
}

}  // namespace beambit
