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

// Problem instances for the quantized wideband uplink: multi-tap channels,
// per-subcarrier power loads, orthonormal receive-beam codebooks and the
// per-user weight/queue state.

#ifndef BEAMBIT_INSTANCE_HPP_
#define BEAMBIT_INSTANCE_HPP_

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

namespace beambit {

using CMatrix = Eigen::MatrixXcd;
using CRowVector = Eigen::RowVectorXcd;
using CVector = Eigen::VectorXcd;

inline constexpr double kInfiniteQueue = std::numeric_limits<double>::infinity();

// Taps H_0..H_{L-1}, each n_rx x n_users, of a cyclic-prefixed OFDM uplink
// with n_subcarriers subcarriers.
class ChannelRealization {
 public:
  ChannelRealization(std::vector<CMatrix> taps, int n_subcarriers);

  const std::vector<CMatrix>& taps() const { return taps_; }
  int n_taps() const { return static_cast<int>(taps_.size()); }
  int n_subcarriers() const { return n_subcarriers_; }
  int n_rx() const { return static_cast<int>(taps_.front().rows()); }
  int n_users() const { return static_cast<int>(taps_.front().cols()); }

 private:
  std::vector<CMatrix> taps_;
  int n_subcarriers_;
};

// Diagonal transmit covariances D_1..D_N, stored as N vectors of K loads.
class PowerProfile {
 public:
  explicit PowerProfile(std::vector<Eigen::VectorXd> loads);

  // Same per-user loads on every subcarrier.
  static PowerProfile Flat(int n_subcarriers, const Eigen::VectorXd& per_user);

  const std::vector<Eigen::VectorXd>& loads() const { return loads_; }
  const Eigen::VectorXd& at(int n) const;  // 1-based subcarrier index
  int n_subcarriers() const { return static_cast<int>(loads_.size()); }
  int n_users() const { return static_cast<int>(loads_.front().size()); }

 private:
  std::vector<Eigen::VectorXd> loads_;
};

// Mutually orthogonal unit-norm receive beams (rows), indexed by beam id.
class BeamCodebook {
 public:
  // kind is "dft", "identity" or empty for an explicit codebook; it only
  // affects serialization.
  BeamCodebook(std::vector<CRowVector> beams, std::string kind = "");

  const CRowVector& beam(int id) const;
  const std::vector<CRowVector>& beams() const { return beams_; }
  int size() const { return static_cast<int>(beams_.size()); }
  int n_rx() const { return static_cast<int>(beams_.front().size()); }
  const std::string& kind() const { return kind_; }

 private:
  std::vector<CRowVector> beams_;
  std::string kind_;
};

// Weights sorted nonincreasing, with the permutation back to caller ids.
// sorted position i holds the user whose original id is order()[i].
class UserState {
 public:
  UserState(std::vector<double> weights, std::vector<double> queues);

  static UserState FullBuffer(std::vector<double> weights);

  int size() const { return static_cast<int>(weights_.size()); }
  std::span<const double> weights() const { return weights_; }
  std::span<const double> queues() const { return queues_; }
  std::span<const int> order() const { return order_; }
  // Weight of sorted user l (0-based); returns 0 for l == size().
  double weight(int l) const;
  bool full_buffer() const;

  std::vector<double> original_weights() const;
  std::vector<double> original_queues() const;

 private:
  std::vector<double> weights_;
  std::vector<double> queues_;
  std::vector<int> order_;
};

struct Instance {
  ChannelRealization channel;
  PowerProfile power;
  BeamCodebook codebook;
  UserState users;

  // Throws std::invalid_argument when the parts disagree on N, K or N_r.
  void Validate() const;
};

// G_n = sum_l H_l exp(-j 2 pi (n-1) l / N), n in 1..N.
CMatrix FreqResponse(const ChannelRealization& channel, int n);

// I.i.d. CN(0, tap_power[l]) entries per tap. Deterministic in seed.
ChannelRealization GenerateRayleigh(int n_rx, int n_users, int n_taps,
                                    int n_subcarriers,
                                    std::span<const double> tap_power,
                                    std::uint64_t seed);

// Uniform 1/L tap power profile.
ChannelRealization GenerateRayleigh(int n_rx, int n_users, int n_taps,
                                    int n_subcarriers, std::uint64_t seed);

// Unit-norm ULA response (half-wavelength spacing) at spatial frequency
// u = sin(angle): entries exp(j pi k u) / sqrt(n_rx).
CRowVector SteeringVector(int n_rx, double u);

struct PathSpec {
  std::complex<double> gain;
  double u;  // sin of the arrival angle
};

// Flat (single-tap) channel whose column k is
// sqrt(n_rx / P_k) * sum_p gain_p * steering(u_p), so E|h_k|^2 = n_rx for
// unit-variance gains.
ChannelRealization GeometricChannel(
    int n_rx, const std::vector<std::vector<PathSpec>>& paths_per_user,
    int n_subcarriers);

// Random paths: CN(0,1) gains, arrival angles uniform in [-pi/2, pi/2).
ChannelRealization GenerateGeometric(int n_rx, int n_users,
                                     int n_paths_per_user, std::uint64_t seed,
                                     int n_subcarriers = 1);

// Row m = (1/sqrt(n)) [exp(-j 2 pi m k / n)]_k.
BeamCodebook DftCodebook(int n_rx);
// Standard basis: beam m selects antenna m (antenna subset selection).
BeamCodebook IdentityCodebook(int n_rx);

nlohmann::json InstanceToJson(const Instance& instance);
Instance InstanceFromJson(const nlohmann::json& doc);

}  // namespace beambit

#endif  // BEAMBIT_INSTANCE_HPP_
