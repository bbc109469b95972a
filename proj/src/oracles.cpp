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

#include "beambit/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include <Eigen/LU>

namespace beambit::oracle {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double Pdf(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi); }

// Composite Simpson rule with an even number of panels.
template <typename Fn>
double Simpson(Fn fn, double a, double b, int panels = 400) {
  if (b <= a) return 0.0;
  const double h = (b - a) / panels;
  double acc = fn(a) + fn(b);
  for (int i = 1; i < panels; ++i) acc += (i % 2 ? 4.0 : 2.0) * fn(a + i * h);
  return acc * h / 3.0;
}

double InverseNormalCdf(double p) {
  double lo = -12.0, hi = 12.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (0.5 * std::erfc(-mid / std::numbers::sqrt2) < p) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double Alpha(int bits, const AdcTable& table) {
  if (bits == kInfiniteBits) return 1.0;
  if (bits <= table.b_lut_max()) return table.lut()[bits - 1];
  return 1.0 - table.a_const() * std::pow(4.0, -bits);
}

std::map<int, int> MaxBitsPerBeam(const Selection& selection) {
  std::map<int, int> out;
  for (const auto& t : selection) {
    auto [it, inserted] = out.emplace(t.beam, t.bits);
    if (!inserted) it->second = std::max(it->second, t.bits);
  }
  return out;
}

}  // namespace

double LloydMaxMse(int bits) {
  if (bits < 1 || bits > 8) throw std::invalid_argument("bits must lie in [1, 8]");
  constexpr double kEdge = 10.0;
  const int levels = 1 << bits;
  std::vector<double> q(levels), edges(levels + 1);
  for (int i = 0; i < levels; ++i) q[i] = InverseNormalCdf((i + 0.5) / levels);
  for (int iter = 0; iter < 20000; ++iter) {
    edges.front() = -kEdge;
    edges.back() = kEdge;
    for (int i = 1; i < levels; ++i) edges[i] = 0.5 * (q[i - 1] + q[i]);
    double moved = 0.0;
    for (int i = 0; i < levels; ++i) {
      const double mass = Simpson(Pdf, edges[i], edges[i + 1]);
      const double moment = Simpson([](double x) { return x * Pdf(x); }, edges[i], edges[i + 1]);
      const double next = moment / mass;
      moved = std::max(moved, std::abs(next - q[i]));
      q[i] = next;
    }
    if (moved < 1e-12) break;
  }
  double mse = 0.0;
  for (int i = 0; i < levels; ++i) {
    const double c = q[i];
    mse += Simpson([c](double x) { return (x - c) * (x - c) * Pdf(x); }, edges[i], edges[i + 1]);
  }
  return mse;
}

CMatrix NaiveDft(const ChannelRealization& channel, int n) {
  const int big_n = channel.n_subcarriers();
  CMatrix g = CMatrix::Zero(channel.n_rx(), channel.n_users());
  for (int r = 0; r < g.rows(); ++r) {
    for (int k = 0; k < g.cols(); ++k) {
      for (int l = 0; l < channel.n_taps(); ++l) {
        const double phase = -2.0 * std::numbers::pi * (n - 1) * l / big_n;
        g(r, k) += channel.taps()[l](r, k) * std::polar(1.0, phase);
      }
    }
  }
  return g;
}

double TimeDomainPsi(const ChannelRealization& channel, const PowerProfile& power,
                     const CRowVector& beam, int t) {
  const int n = channel.n_subcarriers();
  const int nr = channel.n_rx();
  const int k = channel.n_users();
  CMatrix circulant = CMatrix::Zero(n * nr, n * k);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const int lag = ((i - j) % n + n) % n;
      if (lag < channel.n_taps()) circulant.block(i * nr, j * k, nr, k) = channel.taps()[lag];
    }
  }
  CMatrix dft(n, n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      dft(a, b) = std::polar(1.0 / std::sqrt(static_cast<double>(n)), -2.0 * std::numbers::pi * a * b / n);
    }
  }
  CMatrix dft_k = CMatrix::Zero(n * k, n * k);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) dft_k.block(a * k, b * k, k, k) = dft(a, b) * CMatrix::Identity(k, k);
  }
  Eigen::VectorXd d(n * k);
  for (int a = 0; a < n; ++a) d.segment(a * k, k) = power.at(a + 1);
  const CMatrix cov_x = dft_k.adjoint() * d.cast<std::complex<double>>().asDiagonal() * dft_k;

  CMatrix beam_big = CMatrix::Zero(n, n * nr);
  for (int a = 0; a < n; ++a) beam_big.block(a, a * nr, 1, nr) = beam;
  const CMatrix cov = CMatrix::Identity(n, n) + beam_big * circulant * cov_x * circulant.adjoint() * beam_big.adjoint();
  return cov(t, t).real();
}

double Log2DetLu(const CMatrix& x) {
  if (x.size() == 0) return 0.0;
  const CMatrix m = CMatrix::Identity(x.cols(), x.cols()) + x.adjoint() * x;
  return std::log2(std::abs(Eigen::FullPivLU<CMatrix>(m).determinant()));
}

SortedUsers SortUsers(const UserState& users) {
  const auto w = users.original_weights();
  const auto q = users.original_queues();
  SortedUsers out;
  out.ids.resize(w.size());
  std::iota(out.ids.begin(), out.ids.end(), 0);
  std::stable_sort(out.ids.begin(), out.ids.end(), [&](int a, int b) { return w[a] > w[b]; });
  for (int id : out.ids) {
    out.weights.push_back(w[id]);
    out.queues.push_back(q[id]);
  }
  return out;
}

double F(const Instance& instance, const AdcTable& table, const Selection& selection,
         const std::vector<int>& sorted_users) {
  if (sorted_users.empty()) return 0.0;
  const auto beams = MaxBitsPerBeam(selection);
  if (beams.empty()) return 0.0;
  const SortedUsers su = SortUsers(instance.users);
  const auto& ch = instance.channel;
  const int n = ch.n_subcarriers();

  std::vector<CMatrix> g(n);
  for (int s = 0; s < n; ++s) g[s] = NaiveDft(ch, s + 1);

  std::vector<CRowVector> rows;
  for (const auto& [beam, bits] : beams) {
    const CRowVector& w = instance.codebook.beam(beam);
    double psi = 1.0;
    for (int s = 0; s < n; ++s) {
      const CRowVector wg = w * g[s];
      for (int k = 0; k < ch.n_users(); ++k) psi += std::norm(wg(k)) * instance.power.at(s + 1)(k) / n;
    }
    const double a = Alpha(bits, table);
    rows.push_back(std::sqrt(a / (a + (1.0 - a) * psi)) * w);
  }

  double total = 0.0;
  for (int s = 0; s < n; ++s) {
    CMatrix l(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(sorted_users.size()));
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const CRowVector wg = rows[r] * g[s];
      for (std::size_t c = 0; c < sorted_users.size(); ++c) {
        const int user = su.ids[sorted_users[c]];
        l(r, c) = wg(user) * std::sqrt(instance.power.at(s + 1)(user));
      }
    }
    total += Log2DetLu(l);
  }
  return total;
}

std::vector<double> Levels(const Instance& instance, const AdcTable& table,
                           const Selection& selection) {
  const SortedUsers su = SortUsers(instance.users);
  const int k = static_cast<int>(su.ids.size());
  std::vector<double> f_of(std::size_t{1} << k, 0.0);
  for (unsigned mask = 1; mask < f_of.size(); ++mask) {
    std::vector<int> a;
    for (int i = 0; i < k; ++i) {
      if (mask >> i & 1u) a.push_back(i);
    }
    f_of[mask] = F(instance, table, selection, a);
  }
  std::vector<double> out;
  for (int l = 1; l <= k; ++l) {
    double best = kInf;
    for (unsigned mask = 0; mask < (1u << l); ++mask) {
      double v = f_of[mask];
      for (int i = 0; i < l; ++i) {
        if (!(mask >> i & 1u)) v += su.queues[i];
      }
      best = std::min(best, v);
    }
    out.push_back(best);
  }
  return out;
}

double Wsr(const Instance& instance, const AdcTable& table, const Selection& selection) {
  const SortedUsers su = SortUsers(instance.users);
  const auto g = Levels(instance, table, selection);
  double total = 0.0;
  for (std::size_t l = 0; l < g.size(); ++l) {
    const double next = l + 1 < su.weights.size() ? su.weights[l + 1] : 0.0;
    total += (su.weights[l] - next) * g[l];
  }
  return total;
}

double PolymatroidMax(const Instance& instance, const AdcTable& table,
                      const Selection& selection) {
  const SortedUsers su = SortUsers(instance.users);
  const int k = static_cast<int>(su.ids.size());
  if (k > 4) throw std::invalid_argument("vertex enumeration supports at most 4 users");

  std::vector<Eigen::VectorXd> a_rows;
  std::vector<double> b;
  for (unsigned mask = 1; mask < (1u << k); ++mask) {
    Eigen::VectorXd row = Eigen::VectorXd::Zero(k);
    std::vector<int> users;
    for (int i = 0; i < k; ++i) {
      if (mask >> i & 1u) {
        row(i) = 1.0;
        users.push_back(i);
      }
    }
    a_rows.push_back(row);
    b.push_back(F(instance, table, selection, users));
  }
  for (int i = 0; i < k; ++i) {
    Eigen::VectorXd row = Eigen::VectorXd::Zero(k);
    row(i) = -1.0;
    a_rows.push_back(row);
    b.push_back(0.0);
    if (!std::isinf(su.queues[i])) {
      a_rows.push_back(-row);
      b.push_back(su.queues[i]);
    }
  }

  const int m = static_cast<int>(a_rows.size());
  Eigen::VectorXd w(k);
  for (int i = 0; i < k; ++i) w(i) = su.weights[i];
  double best = -kInf;
  std::vector<int> pick(k);
  // Every k-subset of constraints taken as tight.
  auto visit = [&](auto&& self, int start, int depth) -> void {
    if (depth == k) {
      Eigen::MatrixXd a(k, k);
      Eigen::VectorXd rhs(k);
      for (int i = 0; i < k; ++i) {
        a.row(i) = a_rows[pick[i]].transpose();
        rhs(i) = b[pick[i]];
      }
      Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
      if (lu.rank() < k) return;
      const Eigen::VectorXd r = lu.solve(rhs);
      for (int c = 0; c < m; ++c) {
        if (a_rows[c].dot(r) > b[c] + 1e-9 * (1.0 + std::abs(b[c]))) return;
      }
      best = std::max(best, w.dot(r));
      return;
    }
    for (int c = start; c < m; ++c) {
      pick[depth] = c;
      self(self, c + 1, depth + 1);
    }
  };
  visit(visit, 0, 0);
  return best;
}

}  // namespace beambit::oracle
