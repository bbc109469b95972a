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

// Slow, independently coded reference computations. Used by the verification
// suite and the unit tests only; nothing in the optimizers calls these.

#ifndef BEAMBIT_ORACLES_HPP_
#define BEAMBIT_ORACLES_HPP_

#include <vector>

#include "beambit/aqnm.hpp"
#include "beambit/instance.hpp"
#include "beambit/selection.hpp"

namespace beambit::oracle {

// Lloyd-Max MSE for a unit Gaussian with cell moments from composite Simpson
// quadrature on [-10, 10] and quantile initialization.
double LloydMaxMse(int bits);

// sum_l H_l exp(-j 2 pi (n-1) l / N), entry by entry.
CMatrix NaiveDft(const ChannelRealization& channel, int n);

// psi of `beam` at time index `t` read off the explicitly assembled
// block-circulant covariance  I + W C (F^H x I) D (F x I) C^H W^H.
double TimeDomainPsi(const ChannelRealization& channel, const PowerProfile& power,
                     const CRowVector& beam, int t = 0);

// log2 det(I + X^H X) through a full-pivot LU determinant.
double Log2DetLu(const CMatrix& x);

// Users sorted by weight (descending, stable) and their queues.
struct SortedUsers {
  std::vector<int> ids;
  std::vector<double> weights;
  std::vector<double> queues;
};
SortedUsers SortUsers(const UserState& users);

// f(A) with A a list of positions in the sorted-user order. Builds the
// whitened channel from scratch (own pruning, own psi, own t).
double F(const Instance& instance, const AdcTable& table, const Selection& selection,
         const std::vector<int>& sorted_users);

// g(1..K) by enumerating every subset of U_l.
std::vector<double> Levels(const Instance& instance, const AdcTable& table,
                           const Selection& selection);

double Wsr(const Instance& instance, const AdcTable& table, const Selection& selection);

// max sum_k w_k R_k over {R >= 0, R(A) <= f(A), R_k <= Q_k} by enumerating
// the vertices of the polytope (K <= 4).
double PolymatroidMax(const Instance& instance, const AdcTable& table,
                      const Selection& selection);

}  // namespace beambit::oracle

#endif  // BEAMBIT_ORACLES_HPP_
