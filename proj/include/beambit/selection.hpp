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

#ifndef BEAMBIT_SELECTION_HPP_
#define BEAMBIT_SELECTION_HPP_

#include <algorithm>
#include <compare>
#include <initializer_list>
#include <limits>
#include <string>
#include <vector>

#include "json.hpp"

namespace beambit {

// Sentinel for an ideal (unquantized) ADC. Only baseline scoring uses it.
inline constexpr int kInfiniteBits = std::numeric_limits<int>::max();

// One (beam, ADC resolution) pair of the ground set.
struct Tuple {
  int beam = 0;
  int bits = 1;

  friend auto operator<=>(const Tuple&, const Tuple&) = default;
};

// A set of tuples, kept sorted by (beam, bits) without duplicates.
class Selection {
 public:
  Selection() = default;
  Selection(std::initializer_list<Tuple> tuples) : Selection(std::vector<Tuple>(tuples)) {}
  explicit Selection(std::vector<Tuple> tuples) : tuples_(std::move(tuples)) {
    std::sort(tuples_.begin(), tuples_.end());
    tuples_.erase(std::unique(tuples_.begin(), tuples_.end()), tuples_.end());
  }

  const std::vector<Tuple>& tuples() const { return tuples_; }
  int size() const { return static_cast<int>(tuples_.size()); }
  bool empty() const { return tuples_.empty(); }
  auto begin() const { return tuples_.begin(); }
  auto end() const { return tuples_.end(); }

  bool Contains(const Tuple& t) const {
    return std::binary_search(tuples_.begin(), tuples_.end(), t);
  }

  // Returns false if t was already present.
  bool Insert(const Tuple& t) {
    auto it = std::lower_bound(tuples_.begin(), tuples_.end(), t);
    if (it != tuples_.end() && *it == t) return false;
    tuples_.insert(it, t);
    return true;
  }

  Selection With(const Tuple& t) const {
    Selection out = *this;
    out.Insert(t);
    return out;
  }

  // Distinct beam ids, ascending.
  std::vector<int> Beams() const {
    std::vector<int> beams;
    for (const auto& t : tuples_) {
      if (beams.empty() || beams.back() != t.beam) beams.push_back(t.beam);
    }
    return beams;
  }

  bool HasBeam(int beam) const {
    auto it = std::lower_bound(tuples_.begin(), tuples_.end(), Tuple{beam, std::numeric_limits<int>::min()});
    return it != tuples_.end() && it->beam == beam;
  }

  // Distinct beams (the matroid family I).
  bool MatroidFeasible() const {
    for (std::size_t i = 1; i < tuples_.size(); ++i) {
      if (tuples_[i].beam == tuples_[i - 1].beam) return false;
    }
    return true;
  }

  friend bool operator==(const Selection&, const Selection&) = default;

 private:
  std::vector<Tuple> tuples_;
};

// Canonical form: one tuple per distinct beam, carrying the largest
// resolution present for that beam. Idempotent; the result is matroid
// feasible.
Selection Prune(const Selection& selection);

std::string BitsToString(int bits);

// [{"beam": id, "bits": b}, ...]; infinite resolution is written as "inf".
nlohmann::json SelectionToJson(const Selection& s);
Selection SelectionFromJson(const nlohmann::json& doc);

}  // namespace beambit

#endif  // BEAMBIT_SELECTION_HPP_
