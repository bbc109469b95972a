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

#include "beambit/selection.hpp"

#include <stdexcept>

namespace beambit {

Selection Prune(const Selection& selection) {
  std::vector<Tuple> kept;
  for (const auto& t : selection) {
    // Sorted by (beam, bits): the last tuple of each beam run has max bits.
    if (!kept.empty() && kept.back().beam == t.beam) {
      kept.back() = t;
    } else {
      kept.push_back(t);
    }
  }
  return Selection(std::move(kept));
}

std::string BitsToString(int bits) {
  return bits == kInfiniteBits ? std::string("inf") : std::to_string(bits);
}

nlohmann::json SelectionToJson(const Selection& s) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& t : s) {
    nlohmann::json item;
    item["beam"] = t.beam;
    if (t.bits == kInfiniteBits) {
      item["bits"] = "inf";
    } else {
      item["bits"] = t.bits;
    }
    out.push_back(std::move(item));
  }
  return out;
}

Selection SelectionFromJson(const nlohmann::json& doc) {
  if (!doc.is_array()) throw std::invalid_argument("selection must be a JSON array");
  std::vector<Tuple> tuples;
  for (const auto& item : doc) {
    Tuple t;
    t.beam = item.at("beam").get<int>();
    const auto& b = item.at("bits");
    if (b.is_string()) {
      if (b.get<std::string>() != "inf") throw std::invalid_argument("bits sentinel must be \"inf\"");
      t.bits = kInfiniteBits;
    } else {
      t.bits = b.get<int>();
    }
    tuples.push_back(t);
  }
  return Selection(std::move(tuples));
}

}  // namespace beambit
