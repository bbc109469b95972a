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

#include <cmath>

#include "beambit/select.hpp"
#include "beambit/verify.hpp"
#include "doctest.h"

using namespace beambit;

namespace {

CostModel SimpleCost(int n_beams, double budget_e, int budget_m) {
  CostModel cm;
  cm.eps_beam.assign(n_beams, 1.0);
  cm.theta = 0.25;
  cm.b_ref = 3;
  cm.budget_e = budget_e;
  cm.budget_m = budget_m;
  return cm;
}

void CheckFeasible(const Selection& s, const CostModel& cm) {
  CHECK(CPrime(s, cm) <= 1.0 + 1e-9);
  CHECK(static_cast<int>(s.Beams().size()) <= cm.budget_m);
}

}  // namespace

TEST_CASE("tuple cost") {
  CostModel cm = SimpleCost(2, 10.0, 2);
  cm.eps_switch[{5, 3}] = 0.5;
  CHECK(TupleCost({0, 3}, cm) == 1.0 + 0.25 * 8);
  CHECK(TupleCost({1, 5}, cm) == 1.0 + 0.25 * 32 + 0.5);
  CHECK(TupleCost({7, 1}, cm) == 0.5);  // beam without a listed cost
  CHECK_THROWS_AS(TupleCost({0, kInfiniteBits}, cm), std::domain_error);
  CHECK_THROWS_AS(TupleCost({0, 0}, cm), std::domain_error);
  CHECK(SelectionCost({{0, 3}, {1, 1}}, cm) == 1.0 + 2.0 + 1.0 + 0.5);
}

TEST_CASE("cost model validation") {
  CostModel cm = SimpleCost(2, 1.0, 1);
  CHECK_NOTHROW(cm.Validate());
  cm.budget_m = 0;
  CHECK_THROWS_AS(cm.Validate(), std::invalid_argument);
  cm = SimpleCost(2, 0.0, 1);
  CHECK_THROWS_AS(cm.Validate(), std::invalid_argument);
  cm = SimpleCost(2, 1.0, 1);
  cm.eps_beam[1] = -1.0;
  CHECK_THROWS_AS(cm.Validate(), std::invalid_argument);
}

TEST_CASE("c' charges the costliest tuple per beam") {
  const CostModel cm = SimpleCost(3, 8.0, 3);
  CHECK(CPrime({}, cm) == 0.0);
  CHECK(CPrime({{0, 1}, {0, 3}, {2, 2}}, cm) == doctest::Approx((3.0 + 2.0) / 8.0));
  CHECK(CPrime({{0, 3}}, cm) == CPrime(Prune({{0, 1}, {0, 3}}), cm));
  Rng rng(17);
  for (int i = 0; i < 500; ++i) {
    Selection s;
    for (int w = 0; w < 5; ++w) {
      for (int b = 1; b <= 6; ++b) {
        if (rng.Uniform() < 0.2) s.Insert({w, b});
      }
    }
    CHECK(CPrime(s, cm) <= SelectionCost(s, cm) / cm.budget_e + 1e-12);
    CHECK(CPrime(s, cm) == doctest::Approx(SelectionCost(Prune(s), cm) / cm.budget_e));
  }
}

TEST_CASE("d' counts distinct beams") {
  const CostModel cm = SimpleCost(4, 1.0, 4);
  CHECK(DPrime({}, cm) == 0.0);
  CHECK(DPrime({{0, 1}, {0, 2}, {3, 1}}, cm) == 0.5);
}

TEST_CASE("dynamic range clips to 1..12") {
  CHECK(DynamicRange(4, 2) == std::vector<int>{2, 3, 4, 5, 6});
  CHECK(DynamicRange(1, 3) == std::vector<int>{1, 2, 3, 4});
  CHECK(DynamicRange(11, 3) == std::vector<int>{8, 9, 10, 11, 12});
  CHECK(DynamicRange(5, 0) == std::vector<int>{5});
  CHECK_THROWS_AS(DynamicRange(5, -1), std::invalid_argument);
}

TEST_CASE("ground set drops unaffordable tuples") {
  const CostModel cm = SimpleCost(3, 3.0, 2);  // 1 + 0.25 * 2^b <= 3  iff  b <= 3
  const GroundSet g(3, {4, 1, 2, 3, 2}, cm);
  CHECK(g.bits() == std::vector<int>{1, 2, 3, 4});
  CHECK(g.full_size() == 12);
  CHECK(g.size() == 9);
  for (int i = 0; i < g.size(); ++i) {
    CHECK(g.tuples()[i].bits <= 3);
    CHECK(g.costs()[i] == TupleCost(g.tuples()[i], cm));
  }
  CHECK_THROWS_AS(GroundSet(3, {0}, cm), std::invalid_argument);
}

TEST_CASE("algorithm 1 output is feasible") {
  for (int i = 0; i < 40; ++i) {
    const Instance inst = RandomInstance({8, 3, 2, 4, true}, DeriveSeed(11, i));
    const AqnmModel model(inst);
    RateEvaluator eval(model, inst.users);
    Rng rng(DeriveSeed(12, i));
    const std::vector<int> bits = {1, 2, 3, 4};
    const CostModel cm = RandomCostModel(8, bits, 1 + static_cast<int>(rng.Index(5)), rng);
    const GroundSet ground(8, bits, cm);
    const auto r = Algorithm1(eval, ground, cm);
    CheckFeasible(r.selection, cm);
    CHECK(r.zeta1 <= 4.0 * (1.0 + 1e-12));
    CHECK(r.zeta2 <= 4.0 * (1.0 + 1e-12));
    CHECK(r.value == doctest::Approx(eval.HPrime(r.selection)));
    CHECK(r.value >= r.greedy_value - 1e-9);
    for (std::size_t k = 1; k < r.trace.size(); ++k) CHECK(r.trace[k].value >= r.trace[k - 1].value);
  }
}

TEST_CASE("algorithm 1 vacuous constraints take everything") {
  const Instance inst = RandomInstance({4, 2, 1, 2, false}, 5);
  const AqnmModel model(inst);
  RateEvaluator eval(model, inst.users);
  const CostModel cm = SimpleCost(4, 1000.0, 4);
  const GroundSet ground(4, {1, 2, 3}, cm);
  const auto r = Algorithm1(eval, ground, cm);
  CHECK(r.trivial);
  CHECK(r.selection == Selection{{0, 3}, {1, 3}, {2, 3}, {3, 3}});
  CHECK_THROWS_AS(Algorithm1(eval, ground, cm, {.theta = 1.0}), std::invalid_argument);
}

TEST_CASE("algorithm 1 on an empty ground set") {
  const Instance inst = RandomInstance({4, 2, 1, 2, false}, 6);
  const AqnmModel model(inst);
  RateEvaluator eval(model, inst.users);
  const CostModel cm = SimpleCost(4, 0.5, 2);  // every tuple costs more than 1
  const GroundSet ground(4, {1, 2}, cm);
  REQUIRE(ground.empty());
  const auto r = Algorithm1(eval, ground, cm);
  CHECK(r.selection.empty());
  CHECK(r.value == 0.0);
}

TEST_CASE("lazy picks equal exhaustive picks step by step") {
  for (int i = 0; i < 100; ++i) {
    const Instance inst = RandomInstance({8, 3, 2, 4, true}, DeriveSeed(21, i));
    const AqnmModel model(inst);
    RateEvaluator eval(model, inst.users);
    RateEvaluator check(model, inst.users);
    Rng rng(DeriveSeed(22, i));
    const std::vector<int> bits = DynamicRange(3, 2);
    const CostModel cm = RandomCostModel(8, bits, 2 + static_cast<int>(rng.Index(4)), rng);
    const GroundSet ground(8, bits, cm);
    JointOptions opt;
    int steps = 0;
    opt.on_step = [&](const SearchState& state, const Candidate& pick) {
      const auto best = ExhaustiveArgmax(check, ground, cm, state);
      REQUIRE(best.has_value());
      CHECK(best->tuple == pick.tuple);
      CHECK(best->gain == doctest::Approx(pick.gain).epsilon(1e-12));
      ++steps;
    };
    const auto lazy = Algorithm1(eval, ground, cm, opt);
    const auto exact = Algorithm1(check, ground, cm, {.lazy = false});
    CHECK(lazy.selection == exact.selection);
    CHECK(static_cast<int>(lazy.trace.size()) == steps);
  }
}

TEST_CASE("brute force bounds algorithm 1") {
  for (int i = 0; i < 15; ++i) {
    const Instance inst = RandomInstance({6, 3, 2, 4, true}, DeriveSeed(31, i));
    const AqnmModel model(inst);
    RateEvaluator eval(model, inst.users);
    Rng rng(DeriveSeed(32, i));
    const std::vector<int> bits = {1, 2, 3, 4};
    const CostModel cm = RandomCostModel(6, bits, 3, rng);
    const GroundSet ground(6, bits, cm);
    const auto best = BruteForceOpt(eval, ground, cm);
    const auto alg = Algorithm1(eval, ground, cm);
    CheckFeasible(best.selection, cm);
    CHECK(best.selection.MatroidFeasible());
    CHECK(best.value >= alg.value - 1e-9);
  }
  const Instance inst = RandomInstance({12, 2, 1, 2, false}, 1);
  const AqnmModel model(inst);
  RateEvaluator eval(model, inst.users);
  const CostModel cm = SimpleCost(12, 100.0, 3);
  CHECK_THROWS_AS(BruteForceOpt(eval, GroundSet(12, {1, 2}, cm), cm), std::invalid_argument);
  CHECK_THROWS_AS(BruteForceOpt(eval, GroundSet(4, {1, 2, 3, 4, 5}, cm), cm), std::invalid_argument);
}

TEST_CASE("random selection") {
  const Instance inst = RandomInstance({8, 3, 2, 4, false}, 41);
  const AqnmModel model(inst);
  RateEvaluator eval(model, inst.users);
  Rng rng(42);
  const std::vector<int> bits = {3};
  const CostModel cm = RandomCostModel(8, bits, 4, rng);
  const GroundSet ground(8, bits, cm);
  double total = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const Selection s = RandomSelect(ground, cm, rng);
    CheckFeasible(s, cm);
    CHECK(s.MatroidFeasible());
    total += eval.HPrime(s);
  }
  const double joint = Algorithm1(eval, ground, cm).value;
  MESSAGE("random mean " << total / 1000.0 << ", joint " << joint);
}

TEST_CASE("fixed-resolution baselines") {
  const Instance inst = RandomInstance({8, 3, 2, 4, false}, 51);
  const AqnmModel model(inst);
  RateEvaluator eval(model, inst.users);
  const auto q = GreedyFixedBits(eval, 8, 4, 5);
  CHECK(q.selection.size() == 5);
  CHECK(q.selection.MatroidFeasible());
  for (const auto& t : q.selection) CHECK(t.bits == 4);
  CHECK(q.value == eval.HPrime(q.selection));
  const auto f = FasSelect(eval, 8, 4, 5);
  CHECK(f.selection.size() == 5);
  for (const auto& t : f.selection) CHECK(t.bits == 4);
  CHECK(GreedyFixedBits(eval, 3, 4, 5).selection.size() == 3);
  CHECK(GreedyFixedBits(eval, 8, 4, 0).selection.empty());
  CHECK_THROWS_AS(GreedyFixedBits(eval, 8, 4, -1), std::invalid_argument);
}
