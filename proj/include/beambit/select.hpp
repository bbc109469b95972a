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

// Selectors over the (beam, bits) ground set.
//
// The joint selector maximizes h'(G) subject to
//   c'(G) <= 1   (sum over distinct beams of the largest normalized tuple cost)
//   d'(G) <= 1   (distinct beams / M')
// with a multiplicative-weights greedy: each step takes the feasible tuple
// maximizing  h'_G(e) / (z1 c'_G(e) + z2 d'_G(e))  and then scales
// z1 *= theta^{c'_G(e)},  z2 *= theta^{d'_G(e)}.  The best single tuple is
// returned instead when it beats the accumulated value.

#ifndef BEAMBIT_SELECT_HPP_
#define BEAMBIT_SELECT_HPP_

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "beambit/rate.hpp"
#include "beambit/rng.hpp"
#include "beambit/selection.hpp"

namespace beambit {

struct CostModel {
  std::vector<double> eps_beam;                      // per beam id; missing ids cost 0
  std::map<std::pair<int, int>, double> eps_switch;  // (b, b_ref) -> cost; missing = 0
  double theta = 1.0 / 16.0;                         // energy per 2^b
  int b_ref = 4;
  double budget_e = 1.0;
  int budget_m = 1;

  // Throws std::invalid_argument on negative costs or non-positive budgets.
  void Validate() const;
};

// eps_w + eps'(b, b_ref) + theta 2^b. Throws std::domain_error for
// kInfiniteBits.
double TupleCost(const Tuple& t, const CostModel& cm);
// Modular cost: sum over the tuples as given (not pruned).
double SelectionCost(const Selection& s, const CostModel& cm);
double CPrime(const Selection& s, const CostModel& cm);
double DPrime(const Selection& s, const CostModel& cm);

class GroundSet {
 public:
  // All (beam, b) for beam < n_beams and b in bits, minus tuples whose cost
  // exceeds the energy budget.
  GroundSet(int n_beams, std::vector<int> bits, const CostModel& cm);

  const std::vector<Tuple>& tuples() const { return tuples_; }
  const std::vector<double>& costs() const { return costs_; }
  const std::vector<int>& bits() const { return bits_; }
  int n_beams() const { return n_beams_; }
  int size() const { return static_cast<int>(tuples_.size()); }
  bool empty() const { return tuples_.empty(); }
  // Count before infeasible tuples were removed: |W| |B|.
  int full_size() const { return n_beams_ * static_cast<int>(bits_.size()); }

  Selection AsSelection() const { return Selection(tuples_); }

 private:
  int n_beams_;
  std::vector<int> bits_;
  std::vector<Tuple> tuples_;
  std::vector<double> costs_;
};

// Integer resolutions max(1, b_ref - delta) .. min(12, b_ref + delta).
std::vector<int> DynamicRange(int b_ref, int delta);

// Greedy state seen by the search step of the joint selector.
struct SearchState {
  Selection selection;
  double value = 0.0;  // h'(selection)
  double zeta1 = 1.0;
  double zeta2 = 1.0;
  bool use_cost = true;
  bool use_count = true;
  double c_prime = 0.0;
  std::vector<double> beam_cost;  // largest normalized cost per beam, 0 if absent
  std::vector<bool> beam_used;

  // Exact marginals of c' and d' for adding t with normalized cost nc.
  std::pair<double, double> Marginals(const Tuple& t, double normalized_cost,
                                      const CostModel& cm) const;
  bool Feasible(const Tuple& t, double normalized_cost, const CostModel& cm) const;
  double Denominator(double c_marginal, double d_marginal) const;
};

struct Candidate {
  Tuple tuple;
  int index = -1;  // position in the ground set
  double gain = 0.0;
  double c_marginal = 0.0;
  double d_marginal = 0.0;
  double ratio = 0.0;
};

// Ratio of the search step; +inf for a positive gain over a zero denominator.
double SearchRatio(double gain, double denominator);

// Full linear scan of the search step. Ties go to the smaller (beam, bits).
std::optional<Candidate> ExhaustiveArgmax(RateEvaluator& eval, const GroundSet& ground,
                                          const CostModel& cm, const SearchState& state);

// Lazy version of the same search. Stale gains from earlier steps bound the
// current gains from above (submodularity of h'), and the denominators are
// known exactly without evaluating h', so a tuple only needs a fresh h'
// evaluation when its bound reaches the top of the queue. Tuples found
// infeasible or with non-positive gain are dropped for good (both
// properties persist as the selection grows).
class LazyArgmax {
 public:
  explicit LazyArgmax(const GroundSet& ground);

  std::optional<Candidate> Next(RateEvaluator& eval, const CostModel& cm,
                                const SearchState& state);

 private:
  const GroundSet* ground_;
  std::vector<double> stale_gain_;  // +inf until first evaluated
  std::vector<bool> alive_;
};

struct TraceStep {
  int iteration = 0;
  Tuple tuple;
  double gain = 0.0;
  double c_marginal = 0.0;
  double d_marginal = 0.0;
  double zeta1 = 0.0;  // after the update
  double zeta2 = 0.0;
  double value = 0.0;  // running V
};

struct JointOptions {
  double theta = 2.0;
  bool lazy = true;
  // Called after each search step with the state it searched and its pick.
  std::function<void(const SearchState&, const Candidate&)> on_step;
};

struct JointResult {
  Selection selection;
  double value = 0.0;
  std::vector<TraceStep> trace;
  bool trivial = false;          // both constraints vacuous
  bool single_tuple = false;     // post-processing replaced the greedy set
  double greedy_value = 0.0;     // V at loop exit
  double zeta1 = 1.0;
  double zeta2 = 1.0;
};

JointResult Algorithm1(RateEvaluator& eval, const GroundSet& ground, const CostModel& cm,
                       const JointOptions& options = {});

struct BaselineResult {
  Selection selection;
  double value = 0.0;
};

// Plain greedy over {(w, b_fixed)} that fills min(M', |W|) chains.
// Ties go to the smaller beam id.
BaselineResult GreedyFixedBits(RateEvaluator& eval, int n_beams, int b_fixed, int max_chains);

// Chooses beams with quantization ignored, then reports h' at b_fixed.
BaselineResult FasSelect(RateEvaluator& eval, int n_beams, int b_fixed, int max_chains);

// Exact maximizer of h' over distinct-beam assignments with c <= E and at
// most M' beams. Enumerates per-beam (off | resolution) choices; needs at
// most 10 beams and 4 resolutions.
BaselineResult BruteForceOpt(RateEvaluator& eval, const GroundSet& ground, const CostModel& cm);

// Uniformly random feasible augmentations (new beams only) until nothing
// fits.
Selection RandomSelect(const GroundSet& ground, const CostModel& cm, Rng& rng);

}  // namespace beambit

#endif  // BEAMBIT_SELECT_HPP_
