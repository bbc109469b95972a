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

// Queue-constrained weighted sum rate of a (beam, bits) selection.
//
// For a selection G (always evaluated in pruned form) and a user subset A,
//   f(A) = sum_n log2 |I + L_n^A (L_n^A)^H|
// is the sum-rate bound of A over the quantized multiple-access channel.
// With users sorted by weight and U_l = {1..l},
//   g(l) = min_{A subset U_l} Q(U_l \ A) + f(A)
// is the best queue-limited sum rate of the l heaviest users, and the
// weighted sum rate of the weight-ordered corner point is
//   h(G) = sum_l (w_l - w_{l+1}) g(l).
// Rates are in bits per OFDM symbol.

#ifndef BEAMBIT_RATE_HPP_
#define BEAMBIT_RATE_HPP_

#include <atomic>
#include <cstdint>
#include <map>
#include <mutex>
#include <vector>

#include "beambit/aqnm.hpp"
#include "beambit/instance.hpp"
#include "beambit/selection.hpp"

namespace beambit {

// Largest K for which g(l) is evaluated by subset enumeration.
inline constexpr int kMaxEnumeratedUsers = 20;

// Bitmask over sorted user indices (bit i = user i, 0-based).
using UserMask = std::uint32_t;

// log2 |I + X X^H| for any complex X, through the smaller Gram form.
double Log2DetIdentityPlusGram(const CMatrix& x);

struct RateAssignment {
  std::vector<double> rates;  // sorted-weight order

  // Rates indexed by the caller's original user ids.
  std::vector<double> ToOriginalOrder(const UserState& users) const;
};

struct LevelValue {
  double value = 0.0;
  UserMask minimizer = 0;  // smallest mask attaining the minimum
};

// Evaluates f, g and h for one instance. h is memoized on the pruned
// selection; the cache is guarded by a mutex. The AqnmModel and UserState
// must outlive the evaluator.
class RateEvaluator {
 public:
  RateEvaluator(const AqnmModel& model, const UserState& users);

  const AqnmModel& model() const { return *model_; }
  const UserState& users() const { return *users_; }

  double F(const Selection& selection, UserMask users) const;
  double F(const Selection& selection, const std::vector<int>& users) const;

  // l is 1-based. Throws std::out_of_range otherwise.
  LevelValue G(const Selection& selection, int l) const;
  // g(1..K), exact.
  std::vector<double> Levels(const Selection& selection) const;

  // h'(S) = h(Prune(S)). Counted and memoized.
  double HPrime(const Selection& selection);

  RateAssignment CornerRates(const Selection& selection) const;

  // HPrime calls, and calls that missed the cache (fresh evaluations).
  std::uint64_t queries() const { return queries_.load(); }
  std::uint64_t evaluations() const { return evaluations_.load(); }
  void ResetCounters();
  void ClearCache();

 private:
  // Levels of an already pruned selection. With weighted_only, levels whose
  // weight step w_l - w_{l+1} is zero are left at 0.
  std::vector<LevelValue> LevelsOfPruned(const Selection& pruned, bool weighted_only) const;

  const AqnmModel* model_;
  const UserState* users_;
  std::map<std::vector<Tuple>, double> cache_;
  std::mutex cache_mutex_;
  std::atomic<std::uint64_t> queries_{0};
  std::atomic<std::uint64_t> evaluations_{0};
};

// Convenience wrappers that build a throwaway model and evaluator.
double FSet(const Selection& selection, const std::vector<int>& users,
            const Instance& instance, const AdcTable& table = AdcTable::Default());
double GLevel(const Selection& selection, int l, const Instance& instance,
              const AdcTable& table = AdcTable::Default());
double Wsr(const Selection& selection, const Instance& instance,
           const AdcTable& table = AdcTable::Default());
RateAssignment CornerRates(const Selection& selection, const Instance& instance,
                           const AdcTable& table = AdcTable::Default());

}  // namespace beambit

#endif  // BEAMBIT_RATE_HPP_
