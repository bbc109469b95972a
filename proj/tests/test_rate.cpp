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

#include "beambit/oracles.hpp"
#include "beambit/rate.hpp"
#include "beambit/verify.hpp"
#include "doctest.h"

using namespace beambit;

namespace {

Selection RandomSelection(int n_beams, int max_bits, double p, Rng& rng) {
  Selection s;
  for (int w = 0; w < n_beams; ++w) {
    for (int b = 1; b <= max_bits; ++b) {
      if (rng.Uniform() < p) s.Insert({w, b});
    }
  }
  return s;
}

}  // namespace

TEST_CASE("prune") {
  CHECK(Prune({}).empty());
  CHECK(Prune({{1, 2}, {1, 4}, {2, 3}}) == Selection{{1, 4}, {2, 3}});
  CHECK(Prune({{0, kInfiniteBits}, {0, 3}}) == Selection{{0, kInfiniteBits}});
  Rng rng(1);
  for (int i = 0; i < 100; ++i) {
    const Selection s = RandomSelection(6, 6, 0.3, rng);
    const Selection p = Prune(s);
    CHECK(Prune(p) == p);
    CHECK(p.MatroidFeasible());
    CHECK(p.Beams() == s.Beams());
  }
}

TEST_CASE("selection json") {
  const Selection s{{0, 3}, {2, kInfiniteBits}};
  const auto doc = SelectionToJson(s);
  CHECK(doc.dump() == R"([{"beam":0,"bits":3},{"beam":2,"bits":"inf"}])");
  CHECK(SelectionFromJson(doc) == s);
}

TEST_CASE("f_set") {
  const Instance inst = RandomInstance({6, 3, 2, 4, true}, 5);
  const AqnmModel model(inst);
  RateEvaluator eval(model, inst.users);
  const Selection s{{0, 2}, {3, 5}, {4, 1}};
  CHECK(eval.F(s, UserMask{0}) == 0.0);
  CHECK(eval.F({}, UserMask{7}) == 0.0);
  for (UserMask a = 1; a < 8; ++a) {
    std::vector<int> users;
    for (int i = 0; i < 3; ++i) {
      if (a >> i & 1u) users.push_back(i);
    }
    CHECK(eval.F(s, a) == doctest::Approx(oracle::F(inst, AdcTable::Default(), s, users)).epsilon(1e-9));
    CHECK(eval.F(s, a) == eval.F(s, users));
  }
  CHECK_THROWS_AS(eval.F(s, std::vector<int>{3}), std::out_of_range);
}

TEST_CASE("f_set scalar channel") {
  const double p = 2.5;
  const auto ch = GenerateRayleigh(1, 1, 1, 4, 3);
  const Instance inst{ch, PowerProfile::Flat(4, Eigen::VectorXd::Constant(1, p)), IdentityCodebook(1),
                      UserState::FullBuffer({1.0})};
  const double gain = std::norm(ch.taps()[0](0, 0));
  CHECK(FSet({{0, kInfiniteBits}}, {0}, inst) == doctest::Approx(4.0 * std::log2(1.0 + p * gain)).epsilon(1e-12));
}

TEST_CASE("log-det forms agree") {
  Rng rng(4);
  for (int rows : {1, 2, 5}) {
    for (int cols : {1, 3, 6}) {
      CMatrix x(rows, cols);
      for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) x(i, j) = rng.ComplexNormal() * 2.0;
      }
      const CMatrix xt = x.adjoint();
      CHECK(Log2DetIdentityPlusGram(x) == doctest::Approx(oracle::Log2DetLu(x)).epsilon(1e-9));
      CHECK(Log2DetIdentityPlusGram(x) == doctest::Approx(oracle::Log2DetLu(xt)).epsilon(1e-9));
    }
  }
}

TEST_CASE("g_level matches independent enumeration") {
  for (int i = 0; i < 30; ++i) {
    const Instance inst = RandomInstance({6, 3, 2, 4, true, 0.5, 15.0}, DeriveSeed(900, i));
    const AqnmModel model(inst);
    RateEvaluator eval(model, inst.users);
    Rng rng(DeriveSeed(901, i));
    const Selection s = RandomSelection(6, 5, 0.2, rng);
    const auto g = oracle::Levels(inst, AdcTable::Default(), s);
    const auto mine = eval.Levels(s);
    for (int l = 0; l < 3; ++l) CHECK(mine[l] == doctest::Approx(g[l]).epsilon(1e-9));
    CHECK(eval.HPrime(s) == doctest::Approx(oracle::Wsr(inst, AdcTable::Default(), s)).epsilon(1e-9));
  }
}

TEST_CASE("g_level degenerate queues") {
  const Instance base = RandomInstance({4, 3, 1, 2, false}, 17);
  const Selection s{{0, 3}, {1, 3}};
  SUBCASE("infinite queues reduce to prefix sum rates") {
    const AqnmModel model(base);
    RateEvaluator eval(model, base.users);
    for (int l = 1; l <= 3; ++l) {
      UserMask prefix = (UserMask{1} << l) - 1;
      CHECK(eval.G(s, l).value == doctest::Approx(eval.F(s, prefix)).epsilon(1e-12));
    }
  }
  SUBCASE("tiny queues cap every level") {
    const double eps = 1e-9;
    const Instance inst{base.channel, base.power, base.codebook,
                        UserState(base.users.original_weights(), {eps, eps, eps})};
    const AqnmModel model(inst);
    RateEvaluator eval(model, inst.users);
    for (int l = 1; l <= 3; ++l) {
      CHECK(eval.G(s, l).value == doctest::Approx(l * eps).epsilon(1e-6));
      CHECK(eval.G(s, l).minimizer == 0);
    }
  }
  SUBCASE("level index is checked") {
    const AqnmModel model(base);
    RateEvaluator eval(model, base.users);
    CHECK_THROWS_AS(eval.G(s, 0), std::out_of_range);
    CHECK_THROWS_AS(eval.G(s, 4), std::out_of_range);
  }
}

TEST_CASE("wsr") {
  const Instance inst = RandomInstance({5, 3, 2, 4, false}, 23);
  SUBCASE("empty selection is zero") { CHECK(Wsr({}, inst) == 0.0); }
  SUBCASE("equal weights and full buffer give the scaled sum rate") {
    const Instance eq{inst.channel, inst.power, inst.codebook, UserState::FullBuffer({1.5, 1.5, 1.5})};
    const Selection s{{0, 4}, {2, 6}};
    CHECK(Wsr(s, eq) == doctest::Approx(1.5 * FSet(s, {0, 1, 2}, eq)).epsilon(1e-12));
  }
  SUBCASE("pruning does not change the value") {
    const Selection s{{0, 2}, {0, 4}, {2, 6}, {2, 1}};
    CHECK(Wsr(s, inst) == Wsr(Prune(s), inst));
  }
}

TEST_CASE("corner rates") {
  SUBCASE("empty selection") {
    const Instance inst = RandomInstance({4, 3, 1, 2, true}, 8);
    for (double r : CornerRates({}, inst).rates) CHECK(r == 0.0);
  }
  SUBCASE("single user") {
    const Instance base = RandomInstance({4, 1, 1, 2, false}, 9);
    const Selection s{{0, 3}, {2, 3}};
    const double f = FSet(s, {0}, base);
    for (double q : {0.5 * f, 2.0 * f}) {
      const Instance inst{base.channel, base.power, base.codebook, UserState({1.0}, {q})};
      CHECK(CornerRates(s, inst).rates[0] == doctest::Approx(std::min(q, f)).epsilon(1e-12));
    }
  }
  SUBCASE("weighted rates reproduce wsr; invariants hold") {
    for (int i = 0; i < 20; ++i) {
      const Instance inst = RandomInstance({6, 3, 2, 2, true, 0.5, 10.0}, DeriveSeed(70, i));
      const AqnmModel model(inst);
      RateEvaluator eval(model, inst.users);
      const Selection s{{static_cast<int>(i % 6), 2}, {static_cast<int>((i + 3) % 6), 4}};
      const auto r = eval.CornerRates(s);
      const auto g = eval.Levels(s);
      double dot = 0.0, partial = 0.0;
      for (int l = 0; l < 3; ++l) {
        dot += inst.users.weights()[l] * r.rates[l];
        partial += r.rates[l];
        CHECK(r.rates[l] >= -1e-12);
        CHECK(r.rates[l] <= inst.users.queues()[l] + 1e-9);
        CHECK(partial == doctest::Approx(g[l]).epsilon(1e-12));
        if (l > 0) CHECK(g[l] >= g[l - 1] - 1e-12);
      }
      CHECK(dot == doctest::Approx(eval.HPrime(s)).epsilon(1e-9));
      const auto original = r.ToOriginalOrder(inst.users);
      for (int l = 0; l < 3; ++l) CHECK(original[inst.users.order()[l]] == r.rates[l]);
    }
  }
}

TEST_CASE("normalization, monotonicity and diminishing returns") {
  for (int i = 0; i < 10; ++i) {
    const Instance inst = RandomInstance({6, 3, 2, 4, true}, DeriveSeed(300, i));
    const AqnmModel model(inst);
    RateEvaluator eval(model, inst.users);
    CHECK(eval.HPrime({}) == 0.0);
    Rng rng(DeriveSeed(301, i));
    for (int j = 0; j < 50; ++j) {
      const Selection big = RandomSelection(6, 6, 0.15, rng);
      Selection small;
      for (const auto& t : big) {
        if (rng.Uniform() < 0.5) small.Insert(t);
      }
      const Tuple e{static_cast<int>(rng.Index(6)), 1 + static_cast<int>(rng.Index(6))};
      if (big.Contains(e)) continue;
      const double ds = eval.HPrime(small.With(e)) - eval.HPrime(small);
      const double db = eval.HPrime(big.With(e)) - eval.HPrime(big);
      CHECK(ds >= -1e-9);
      CHECK(ds >= db - 1e-7 * std::max(1.0, eval.HPrime(big.With(e))));
    }
  }
}

TEST_CASE("f increments grow with the selection") {
  // For A subset of B and G subset of G': f_G(B) - f_G(A) <= f_G'(B) - f_G'(A).
  for (int i = 0; i < 10; ++i) {
    const Instance inst = RandomInstance({6, 4, 2, 4, false}, DeriveSeed(400, i));
    const AqnmModel model(inst);
    RateEvaluator eval(model, inst.users);
    Rng rng(DeriveSeed(401, i));
    for (int j = 0; j < 30; ++j) {
      const Selection big = RandomSelection(6, 6, 0.2, rng);
      Selection small;
      for (const auto& t : big) {
        if (rng.Uniform() < 0.5) small.Insert(t);
      }
      const UserMask b = static_cast<UserMask>(rng.Index(16));
      const UserMask a = b & static_cast<UserMask>(rng.Index(16));
      CHECK(eval.F(small, b) - eval.F(small, a) <= eval.F(big, b) - eval.F(big, a) + 1e-9);
    }
  }
}

TEST_CASE("a larger selection has a smaller level minimizer") {
  for (int i = 0; i < 10; ++i) {
    const Instance inst = RandomInstance({6, 4, 2, 2, true, 0.5, 10.0}, DeriveSeed(500, i));
    const AqnmModel model(inst);
    RateEvaluator eval(model, inst.users);
    Rng rng(DeriveSeed(501, i));
    const Selection big = RandomSelection(6, 5, 0.25, rng);
    Selection small;
    for (const auto& t : big) {
      if (rng.Uniform() < 0.5) small.Insert(t);
    }
    const auto queues = inst.users.queues();
    for (int l = 1; l <= 4; ++l) {
      auto minimizers = [&](const Selection& s) {
        std::vector<std::pair<UserMask, double>> values;
        double best = INFINITY;
        for (UserMask a = 0; a < (1u << l); ++a) {
          double v = eval.F(s, a);
          for (int k = 0; k < l; ++k) {
            if (!(a >> k & 1u)) v += queues[k];
          }
          values.push_back({a, v});
          best = std::min(best, v);
        }
        std::vector<UserMask> out;
        for (const auto& [a, v] : values) {
          if (v <= best + 1e-9 * std::max(1.0, best)) out.push_back(a);
        }
        return out;
      };
      bool nested = false;
      for (UserMask a : minimizers(small)) {
        for (UserMask b : minimizers(big)) nested = nested || (b & ~a) == 0;
      }
      CHECK(nested);
    }
  }
}

TEST_CASE("memoization counts") {
  const Instance inst = RandomInstance({4, 2, 1, 2, false}, 3);
  const AqnmModel model(inst);
  RateEvaluator eval(model, inst.users);
  eval.HPrime({{0, 2}});
  eval.HPrime({{0, 2}});
  eval.HPrime({{0, 1}, {0, 2}});
  CHECK(eval.queries() == 3);
  CHECK(eval.evaluations() == 1);
  eval.ResetCounters();
  eval.ClearCache();
  eval.HPrime({{0, 2}});
  CHECK(eval.evaluations() == 1);
}

TEST_CASE("enumeration cap") {
  std::vector<double> w(21, 1.0), q(21, 5.0);
  const auto ch = GenerateRayleigh(2, 21, 1, 1, 1);
  const Instance inst{ch, PowerProfile::Flat(1, Eigen::VectorXd::Ones(21)), IdentityCodebook(2), UserState(w, q)};
  const AqnmModel model(inst);
  CHECK_THROWS_AS(RateEvaluator(model, inst.users), std::invalid_argument);
}
