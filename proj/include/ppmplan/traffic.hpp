// Copyright 2026 The ppmplan Authors
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

#ifndef PPMPLAN_TRAFFIC_HPP_
#define PPMPLAN_TRAFFIC_HPP_

#include <array>
#include <compare>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "ppmplan/topology.hpp"

namespace ppmplan {

inline constexpr std::array<int, 4> kDefaultRatesGbps{100, 200, 300, 400};

// A unidirectional request between two distinct nodes.
struct Demand {
  NodeIndex src = 0;
  NodeIndex dst = 0;
  int rate_gbps = 0;

  friend auto operator<=>(const Demand&, const Demand&) = default;
};

struct DemandSet {
  std::vector<Demand> demands;
  std::uint64_t seed = 0;

  double total_tbps() const;
};

// Draws demands i.i.d.: ordered node pair uniform over all ordered pairs,
// rate uniform over `rates`. The stream for a seed is fixed, so the first
// n demands never depend on how many are drawn afterwards.
class DemandGenerator {
 public:
  DemandGenerator(std::size_t node_count, std::uint64_t seed,
                  std::span<const int> rates = kDefaultRatesGbps);

  Demand next();
  std::uint64_t seed() const { return seed_; }

 private:
  std::size_t node_count_;
  std::uint64_t seed_;
  std::vector<int> rates_;
  std::mt19937_64 rng_;
};

DemandSet generate_demands(const Topology& topology, std::size_t count,
                           std::uint64_t seed,
                           std::span<const int> rates = kDefaultRatesGbps);

// Throws DataError when a demand references unknown nodes, has equal
// endpoints or a non-positive rate.
void validate_demands(const Topology& topology,
                      std::span<const Demand> demands);

}  // namespace ppmplan

#endif  // PPMPLAN_TRAFFIC_HPP_
