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

#include "beambit/select.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>

namespace beambit {

namespace {

// Slack for budget comparisons; budgets are usually sums of the same costs.
constexpr double kFeasTol = 1e-12;

constexpr double kZetaTol = 1e-12;

constexpr int kBruteForceMaxBeams = 10;
constexpr int kBruteForceMaxBits = 4;

constexpr double kInf = std::numeric_limits<double>::infinity();

// Order of the search step: larger ratio first, then smaller tuple.
bool Better(double ratio_a, const Tuple& a, double ratio_b, const Tuple& b) {
  if (ratio_a != ratio_b) return ratio_a > ratio_b;
  return a < b;
}

SearchState InitialState(int n_beams) {
  SearchState s;
  s.beam_cost.assign(n_beams, 0.0);
  s.beam_used.assign(n_beams, false);
  return s;
}

int CountBeams(const SearchState& s) {
  return static_cast<int>(std::count(s.beam_used.begin(), s.beam_used.end(), true));
}

}  // namespace

void CostModel::Validate() const {
  for (double e : eps_beam) {
    if (!(e >= 0.0)) throw std::invalid_argument("beam costs must be nonnegative");
  }
  for (const auto& [key, e] : eps_switch) {
    if (!(e >= 0.0)) throw std::invalid_argument("switching costs must be nonnegative");
  }
  if (!(theta > 0.0)) throw std::invalid_argument("theta must be positive");
  if (!(budget_e > 0.0)) throw std::invalid_argument("energy budget must be positive");
  if (budget_m < 1) throw std::invalid_argument("chain cap must be at least 1");
}

double TupleCost(const Tuple& t, const CostModel& cm) {
  if (t.bits == kInfiniteBits) throw std::domain_error("infinite-resolution tuples have no cost");
  if (t.bits < 1) throw std::domain_error("ADC resolution must be positive");
  double cost = std::ldexp(cm.theta, t.bits);
  if (t.beam >= 0 && t.beam < static_cast<int>(cm.eps_beam.size())) cost += cm.eps_beam[t.beam];
  if (auto it = cm.eps_switch.find({t.bits, cm.b_ref}); it != cm.eps_switch.end()) cost += it->second;
  return cost;
}

double SelectionCost(const Selection& s, const CostModel& cm) {
  double total = 0.0;
  for (const auto& t : s) total += TupleCost(t, cm);
  return total;
}

double CPrime(const Selection& s, const CostModel& cm) {
  double total = 0.0;
  double beam_max = 0.0;
  int beam = -1;
  for (const auto& t : s) {
    const double c = TupleCost(t, cm) / cm.budget_e;
    if (t.beam != beam) {
      total += beam_max;
      beam = t.beam;
      beam_max = c;
    } else {
      beam_max = std::max(beam_max, c);
    }
  }
  return total + beam_max;
}

double DPrime(const Selection& s, const CostModel& cm) {
  return static_cast<double>(s.Beams().size()) / cm.budget_m;
}

GroundSet::GroundSet(int n_beams, std::vector<int> bits, const CostModel& cm)
    : n_beams_(n_beams), bits_(std::move(bits)) {
  if (n_beams < 0) throw std::invalid_argument("n_beams must be nonnegative");
  std::sort(bits_.begin(), bits_.end());
  bits_.erase(std::unique(bits_.begin(), bits_.end()), bits_.end());
  for (int b : bits_) {
    if (b < 1 || b == kInfiniteBits) throw std::invalid_argument("ground-set resolutions must be finite and positive");
  }
  for (int w = 0; w < n_beams; ++w) {
    for (int b : bits_) {
      const Tuple t{w, b};
      const double c = TupleCost(t, cm);
      if (c <= cm.budget_e * (1.0 + kFeasTol)) {
        tuples_.push_back(t);
        costs_.push_back(c);
      }
    }
  }
}

std::vector<int> DynamicRange(int b_ref, int delta) {
  if (delta < 0) throw std::invalid_argument("delta must be nonnegative");
  std::vector<int> out;
  for (int b = std::max(1, b_ref - delta); b <= std::min(12, b_ref + delta); ++b) out.push_back(b);
  return out;
}

std::pair<double, double> SearchState::Marginals(const Tuple& t, double normalized_cost,
                                                 const CostModel& cm) const {
  const double c = std::max(0.0, normalized_cost - beam_cost[t.beam]);
  const double d = beam_used[t.beam] ? 0.0 : 1.0 / cm.budget_m;
  return {c, d};
}

bool SearchState::Feasible(const Tuple& t, double normalized_cost, const CostModel& cm) const {
  const double c = Marginals(t, normalized_cost, cm).first;
  if (use_cost && c_prime + c > 1.0 + kFeasTol) return false;
  if (use_count && !beam_used[t.beam] && CountBeams(*this) + 1 > cm.budget_m) return false;
  return true;
}

double SearchState::Denominator(double c_marginal, double d_marginal) const {
  return (use_cost ? zeta1 * c_marginal : 0.0) + (use_count ? zeta2 * d_marginal : 0.0);
}

double SearchRatio(double gain, double denominator) {
  if (denominator <= 0.0) return gain > 0.0 ? kInf : 0.0;
  return gain / denominator;
}

std::optional<Candidate> ExhaustiveArgmax(RateEvaluator& eval, const GroundSet& ground,
                                          const CostModel& cm, const SearchState& state) {
  std::optional<Candidate> best;
  for (int i = 0; i < ground.size(); ++i) {
    const Tuple& t = ground.tuples()[i];
    if (state.selection.Contains(t)) continue;
    const double nc = ground.costs()[i] / cm.budget_e;
    if (!state.Feasible(t, nc, cm)) continue;
    const double gain = eval.HPrime(state.selection.With(t)) - state.value;
    if (!(gain > 0.0)) continue;
    const auto [c, d] = state.Marginals(t, nc, cm);
    const double ratio = SearchRatio(gain, state.Denominator(c, d));
    if (!best || Better(ratio, t, best->ratio, best->tuple)) best = Candidate{t, i, gain, c, d, ratio};
  }
  return best;
}

LazyArgmax::LazyArgmax(const GroundSet& ground)
    : ground_(&ground), stale_gain_(ground.size(), kInf), alive_(ground.size(), true) {}

std::optional<Candidate> LazyArgmax::Next(RateEvaluator& eval, const CostModel& cm,
                                          const SearchState& state) {
  struct Entry {
    double key;
    int index;
    bool fresh;
  };
  const auto& tuples = ground_->tuples();
  auto less = [&](const Entry& a, const Entry& b) {
    // priority_queue pops the largest; "largest" = best by the search order.
    return Better(b.key, tuples[b.index], a.key, tuples[a.index]);
  };
  std::priority_queue<Entry, std::vector<Entry>, decltype(less)> heap(less);

  // Stale gains may exceed the fresh ones by rounding only; pad the bound.
  const double pad = 1e-11 * (1.0 + std::abs(state.value));
  for (int i = 0; i < ground_->size(); ++i) {
    if (!alive_[i]) continue;
    const Tuple& t = tuples[i];
    if (state.selection.Contains(t)) {
      alive_[i] = false;
      continue;
    }
    const double nc = ground_->costs()[i] / cm.budget_e;
    if (!state.Feasible(t, nc, cm)) {
      alive_[i] = false;
      continue;
    }
    const auto [c, d] = state.Marginals(t, nc, cm);
    const double bound = std::isinf(stale_gain_[i]) ? kInf : stale_gain_[i] + pad;
    heap.push({SearchRatio(bound, state.Denominator(c, d)), i, false});
  }

  while (!heap.empty()) {
    const Entry top = heap.top();
    heap.pop();
    const Tuple& t = tuples[top.index];
    const double nc = ground_->costs()[top.index] / cm.budget_e;
    const auto [c, d] = state.Marginals(t, nc, cm);
    if (top.fresh) {
      return Candidate{t, top.index, stale_gain_[top.index], c, d, top.key};
    }
    const double gain = eval.HPrime(state.selection.With(t)) - state.value;
    stale_gain_[top.index] = gain;
    if (!(gain > 0.0)) {
      alive_[top.index] = false;
      continue;
    }
    heap.push({SearchRatio(gain, state.Denominator(c, d)), top.index, true});
  }
  return std::nullopt;
}

JointResult Algorithm1(RateEvaluator& eval, const GroundSet& ground, const CostModel& cm,
                       const JointOptions& options) {
  cm.Validate();
  if (!(options.theta > 1.0)) throw std::invalid_argument("theta must exceed 1");
  JointResult result;
  if (ground.empty()) return result;

  const Selection all = ground.AsSelection();
  const bool use_cost = CPrime(all, cm) > 1.0;
  const bool use_count = DPrime(all, cm) > 1.0;
  if (!use_cost && !use_count) {
    result.trivial = true;
    result.selection = Prune(all);
    result.value = eval.HPrime(result.selection);
    result.greedy_value = result.value;
    return result;
  }

  SearchState state = InitialState(ground.n_beams());
  state.use_cost = use_cost;
  state.use_count = use_count;
  LazyArgmax lazy(ground);
  const double theta = options.theta;
  double v = 0.0;
  int iteration = 0;
  // A constraint that is exactly tight leaves zeta at theta up to rounding.
  const double zeta_cap = theta * (1.0 + kZetaTol);
  while (state.zeta1 <= zeta_cap && state.zeta2 <= zeta_cap) {
    const auto pick = options.lazy ? lazy.Next(eval, cm, state)
                                   : ExhaustiveArgmax(eval, ground, cm, state);
    if (!pick) break;
    if (options.on_step) options.on_step(state, *pick);

    const Tuple& t = pick->tuple;
    state.selection.Insert(t);
    state.value = eval.HPrime(state.selection);
    v += pick->gain;
    if (use_cost) state.zeta1 *= std::pow(theta, pick->c_marginal);
    if (use_count) state.zeta2 *= std::pow(theta, pick->d_marginal);
    state.c_prime += pick->c_marginal;
    state.beam_cost[t.beam] = std::max(state.beam_cost[t.beam], ground.costs()[pick->index] / cm.budget_e);
    state.beam_used[t.beam] = true;
    result.trace.push_back({++iteration, t, pick->gain, pick->c_marginal, pick->d_marginal,
                            state.zeta1, state.zeta2, v});
  }
  assert(state.zeta1 <= theta * theta * (1.0 + 1e-12));
  assert(state.zeta2 <= theta * theta * (1.0 + 1e-12));
  result.zeta1 = state.zeta1;
  result.zeta2 = state.zeta2;
  result.greedy_value = v;
  result.selection = state.selection;

  // Best single tuple.
  std::optional<Tuple> single;
  double single_value = -kInf;
  for (const auto& t : ground.tuples()) {
    const double h = eval.HPrime(Selection{t});
    if (h > single_value) {
      single_value = h;
      single = t;
    }
  }
  if (single && single_value > v) {
    result.selection = Selection{*single};
    result.single_tuple = true;
  }
  result.value = eval.HPrime(result.selection);
  return result;
}

BaselineResult GreedyFixedBits(RateEvaluator& eval, int n_beams, int b_fixed, int max_chains) {
  if (max_chains < 0) throw std::invalid_argument("max_chains must be nonnegative");
  BaselineResult out;
  std::vector<bool> used(n_beams, false);
  double current = 0.0;
  const int steps = std::min(max_chains, n_beams);
  for (int step = 0; step < steps; ++step) {
    int best_beam = -1;
    double best_gain = -kInf;
    for (int w = 0; w < n_beams; ++w) {
      if (used[w]) continue;
      const double gain = eval.HPrime(out.selection.With({w, b_fixed})) - current;
      if (gain > best_gain) {
        best_gain = gain;
        best_beam = w;
      }
    }
    used[best_beam] = true;
    out.selection.Insert({best_beam, b_fixed});
    current = eval.HPrime(out.selection);
  }
  out.value = current;
  return out;
}

BaselineResult FasSelect(RateEvaluator& eval, int n_beams, int b_fixed, int max_chains) {
  const BaselineResult ideal = GreedyFixedBits(eval, n_beams, kInfiniteBits, max_chains);
  BaselineResult out;
  for (const auto& t : ideal.selection) out.selection.Insert({t.beam, b_fixed});
  out.value = eval.HPrime(out.selection);
  return out;
}

BaselineResult BruteForceOpt(RateEvaluator& eval, const GroundSet& ground, const CostModel& cm) {
  cm.Validate();
  struct Option {
    int bits;
    double cost;
  };
  std::vector<int> beams;
  std::vector<std::vector<Option>> options;
  for (int i = 0; i < ground.size(); ++i) {
    const Tuple& t = ground.tuples()[i];
    if (beams.empty() || beams.back() != t.beam) {
      beams.push_back(t.beam);
      options.emplace_back();
    }
    options.back().push_back({t.bits, ground.costs()[i]});
  }
  if (static_cast<int>(beams.size()) > kBruteForceMaxBeams ||
      static_cast<int>(ground.bits().size()) > kBruteForceMaxBits) {
    throw std::invalid_argument("brute force is limited to 10 beams and 4 resolutions");
  }

  const double budget = cm.budget_e * (1.0 + kFeasTol);
  const int n = static_cast<int>(beams.size());
  std::vector<int> choice(n, -1);  // option index or -1 for off
  BaselineResult best;
  best.value = -kInf;

  // Only maximal assignments are evaluated: h' is monotone, so a feasible
  // assignment that still admits a switch-on or an upgrade is dominated.
  auto maximal = [&](double cost, int count) {
    for (int i = 0; i < n; ++i) {
      if (choice[i] < 0) {
        if (count >= cm.budget_m) continue;
        for (const auto& o : options[i]) {
          if (cost + o.cost <= budget) return false;
        }
      } else {
        const auto& cur = options[i][choice[i]];
        for (const auto& o : options[i]) {
          if (o.bits > cur.bits && cost - cur.cost + o.cost <= budget) return false;
        }
      }
    }
    return true;
  };

  auto dfs = [&](auto&& self, int i, double cost, int count) -> void {
    if (i == n) {
      if (!maximal(cost, count)) return;
      Selection s;
      for (int j = 0; j < n; ++j) {
        if (choice[j] >= 0) s.Insert({beams[j], options[j][choice[j]].bits});
      }
      const double h = eval.HPrime(s);
      if (h > best.value) {
        best.value = h;
        best.selection = std::move(s);
      }
      return;
    }
    choice[i] = -1;
    self(self, i + 1, cost, count);
    if (count >= cm.budget_m) return;
    for (int k = 0; k < static_cast<int>(options[i].size()); ++k) {
      if (cost + options[i][k].cost > budget) continue;
      choice[i] = k;
      self(self, i + 1, cost + options[i][k].cost, count + 1);
    }
    choice[i] = -1;
  };
  dfs(dfs, 0, 0.0, 0);
  if (best.value == -kInf) best.value = 0.0;
  return best;
}

Selection RandomSelect(const GroundSet& ground, const CostModel& cm, Rng& rng) {
  Selection out;
  std::vector<bool> used(ground.n_beams(), false);
  double cost = 0.0;
  int count = 0;
  const double budget = cm.budget_e * (1.0 + kFeasTol);
  std::vector<int> fits;
  for (;;) {
    fits.clear();
    if (count < cm.budget_m) {
      for (int i = 0; i < ground.size(); ++i) {
        if (!used[ground.tuples()[i].beam] && cost + ground.costs()[i] <= budget) fits.push_back(i);
      }
    }
    if (fits.empty()) break;
    const int i = fits[rng.Index(fits.size())];
    out.Insert(ground.tuples()[i]);
    used[ground.tuples()[i].beam] = true;
    cost += ground.costs()[i];
    ++count;
  }
  return out;
}

}  // namespace beambit
