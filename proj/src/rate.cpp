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

#include "beambit/rate.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace beambit {

namespace {

double Log2DetCholesky(const CMatrix& hermitian_pd) {
  Eigen::LLT<CMatrix> llt(hermitian_pd);
  if (llt.info() != Eigen::Success) throw std::runtime_error("Cholesky failed on I + Gram");
  const auto& l = llt.matrixLLT();
  double acc = 0.0;
  for (Eigen::Index i = 0; i < l.rows(); ++i) acc += std::log2(l(i, i).real());
  return 2.0 * acc;
}

CMatrix SelectColumns(const CMatrix& x, UserMask users) {
  std::vector<Eigen::Index> cols;
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    if (users & (UserMask{1} << j)) cols.push_back(j);
  }
  CMatrix out(x.rows(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c) out.col(static_cast<Eigen::Index>(c)) = x.col(cols[c]);
  return out;
}

double FOnChannel(const EffectiveChannel& ch, UserMask users) {
  if (users == 0 || ch.rows() == 0) return 0.0;
  double acc = 0.0;
  for (const auto& l : ch.per_subcarrier) acc += Log2DetIdentityPlusGram(SelectColumns(l, users));
  return acc;
}

// f(U_l) for every l from one Cholesky per subcarrier: the leading
// principal minors of I + L^H L are the nested-prefix determinants.
std::vector<double> PrefixF(const EffectiveChannel& ch, int n_users) {
  std::vector<double> f(n_users + 1, 0.0);
  if (ch.rows() == 0) return f;
  for (const auto& l : ch.per_subcarrier) {
    CMatrix gram = l.adjoint() * l;
    gram.diagonal().array() += 1.0;
    Eigen::LLT<CMatrix> llt(gram);
    if (llt.info() != Eigen::Success) throw std::runtime_error("Cholesky failed on I + Gram");
    const auto& c = llt.matrixLLT();
    double running = 0.0;
    for (int i = 0; i < n_users; ++i) {
      running += 2.0 * std::log2(c(i, i).real());
      f[i + 1] += running;
    }
  }
  return f;
}

UserMask PrefixMask(int l) { return l >= 32 ? ~UserMask{0} : (UserMask{1} << l) - 1; }

}  // namespace

double Log2DetIdentityPlusGram(const CMatrix& x) {
  if (x.rows() == 0 || x.cols() == 0) return 0.0;
  CMatrix gram = x.cols() <= x.rows() ? CMatrix(x.adjoint() * x) : CMatrix(x * x.adjoint());
  gram.diagonal().array() += 1.0;
  return Log2DetCholesky(gram);
}

std::vector<double> RateAssignment::ToOriginalOrder(const UserState& users) const {
  std::vector<double> out(rates.size());
  const auto order = users.order();
  for (std::size_t i = 0; i < rates.size(); ++i) out[order[i]] = rates[i];
  return out;
}

RateEvaluator::RateEvaluator(const AqnmModel& model, const UserState& users)
    : model_(&model), users_(&users) {
  if (users.size() != model.n_users()) throw std::invalid_argument("user state does not match model");
  if (!users.full_buffer() && users.size() > kMaxEnumeratedUsers) {
    throw std::invalid_argument("finite queues need subset enumeration, which is capped at " +
                                std::to_string(kMaxEnumeratedUsers) + " users");
  }
}

double RateEvaluator::F(const Selection& selection, UserMask users) const {
  if (model_->n_users() < 32 && (users >> model_->n_users()) != 0) {
    throw std::out_of_range("user mask refers to nonexistent users");
  }
  return FOnChannel(model_->Whiten(selection), users);
}

double RateEvaluator::F(const Selection& selection, const std::vector<int>& users) const {
  UserMask mask = 0;
  for (int u : users) {
    if (u < 0 || u >= model_->n_users() || u >= 32) throw std::out_of_range("user index out of range");
    mask |= UserMask{1} << u;
  }
  return F(selection, mask);
}

std::vector<LevelValue> RateEvaluator::LevelsOfPruned(const Selection& pruned,
                                                      bool weighted_only) const {
  const int k = users_->size();
  const auto queues = users_->queues();
  std::vector<LevelValue> levels(k);
  const EffectiveChannel ch = model_->Whiten(pruned);
  if (ch.rows() == 0) {
    // f = 0 and queues are positive, so only A = U_l attains the minimum 0.
    for (int l = 0; l < k; ++l) levels[l] = {0.0, PrefixMask(l + 1)};
    return levels;
  }

  int first_finite = k;
  for (int i = 0; i < k; ++i) {
    if (!std::isinf(queues[i])) {
      first_finite = i;
      break;
    }
  }
  const std::vector<double> prefix = PrefixF(ch, k);
  for (int l = 1; l <= std::min(first_finite, k); ++l) levels[l - 1] = {prefix[l], PrefixMask(l)};
  if (first_finite == k) return levels;

  std::vector<double> fcache(std::size_t{1} << k, std::numeric_limits<double>::quiet_NaN());
  auto f_of = [&](UserMask a) {
    double& slot = fcache[a];
    if (std::isnan(slot)) slot = FOnChannel(ch, a);
    return slot;
  };
  for (int l = first_finite + 1; l <= k; ++l) {
    if (weighted_only && users_->weight(l - 1) - users_->weight(l) == 0.0) continue;
    UserMask inf_mask = 0;
    std::vector<int> finite;
    for (int i = 0; i < l; ++i) {
      if (std::isinf(queues[i])) {
        inf_mask |= UserMask{1} << i;
      } else {
        finite.push_back(i);
      }
    }
    LevelValue best{std::numeric_limits<double>::infinity(), 0};
    const std::uint64_t n_sub = std::uint64_t{1} << finite.size();
    for (std::uint64_t sub = 0; sub < n_sub; ++sub) {
      UserMask a = inf_mask;
      double q_rest = 0.0;
      for (std::size_t j = 0; j < finite.size(); ++j) {
        if (sub & (std::uint64_t{1} << j)) {
          a |= UserMask{1} << finite[j];
        } else {
          q_rest += queues[finite[j]];
        }
      }
      const double v = q_rest + f_of(a);
      if (v < best.value || (v == best.value && a < best.minimizer)) best = {v, a};
    }
    levels[l - 1] = best;
  }
  return levels;
}

LevelValue RateEvaluator::G(const Selection& selection, int l) const {
  if (l < 1 || l > users_->size()) throw std::out_of_range("level index out of range");
  return LevelsOfPruned(Prune(selection), false)[l - 1];
}

std::vector<double> RateEvaluator::Levels(const Selection& selection) const {
  const auto levels = LevelsOfPruned(Prune(selection), false);
  std::vector<double> out;
  out.reserve(levels.size());
  for (const auto& lv : levels) out.push_back(lv.value);
  return out;
}

double RateEvaluator::HPrime(const Selection& selection) {
  const Selection pruned = Prune(selection);
  ++queries_;
  {
    std::lock_guard<std::mutex> lock(cache_mutex_);
    if (auto it = cache_.find(pruned.tuples()); it != cache_.end()) return it->second;
  }
  ++evaluations_;
  double value = 0.0;
  if (!pruned.empty()) {
    const auto levels = LevelsOfPruned(pruned, true);
    for (int l = 1; l <= users_->size(); ++l) {
      const double step = users_->weight(l - 1) - users_->weight(l);
      if (step != 0.0) value += step * levels[l - 1].value;
    }
  }
  std::lock_guard<std::mutex> lock(cache_mutex_);
  cache_.emplace(pruned.tuples(), value);
  return value;
}

RateAssignment RateEvaluator::CornerRates(const Selection& selection) const {
  const auto g = Levels(selection);
  RateAssignment out;
  out.rates.resize(g.size());
  double prev = 0.0;
  for (std::size_t l = 0; l < g.size(); ++l) {
    out.rates[l] = g[l] - prev;
    prev = g[l];
  }
  return out;
}

void RateEvaluator::ResetCounters() {
  queries_ = 0;
  evaluations_ = 0;
}

void RateEvaluator::ClearCache() {
  std::lock_guard<std::mutex> lock(cache_mutex_);
  cache_.clear();
}

double FSet(const Selection& selection, const std::vector<int>& users,
            const Instance& instance, const AdcTable& table) {
  const AqnmModel model(instance, table);
  return RateEvaluator(model, instance.users).F(selection, users);
}

double GLevel(const Selection& selection, int l, const Instance& instance,
              const AdcTable& table) {
  const AqnmModel model(instance, table);
  return RateEvaluator(model, instance.users).G(selection, l).value;
}

double Wsr(const Selection& selection, const Instance& instance, const AdcTable& table) {
  const AqnmModel model(instance, table);
  return RateEvaluator(model, instance.users).HPrime(selection);
}

RateAssignment CornerRates(const Selection& selection, const Instance& instance,
                           const AdcTable& table) {
  const AqnmModel model(instance, table);
  return RateEvaluator(model, instance.users).CornerRates(selection);
}

}  // namespace beambit
