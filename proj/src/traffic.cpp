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

#include "ppmplan/traffic.hpp"

#include <numeric>
#include <string>

#include "ppmplan/error.hpp"

namespace ppmplan {

double DemandSet::total_tbps() const {
  long long gbps = 0;
  for (const Demand& d : demands) gbps += d.rate_gbps;
  return static_cast<double>(gbps) / 1000.0;
}

DemandGenerator::DemandGenerator(std::size_t node_count, std::uint64_t seed,
                                 std::span<const int> rates)
    : node_count_(node_count),
      seed_(seed),
      rates_(rates.begin(), rates.end()),
      rng_(seed) {
  if (node_count_ < 2) {
    throw DataError("demand generation needs at least 2 nodes");
  }
  if (rates_.empty()) throw DataError("empty demand rate set");
  for (int r : rates_) {
    if (r <= 0) throw DataError("demand rates must be positive");
  }
}

Demand DemandGenerator::next() {
  std::uniform_int_distribution<std::size_t> src_dist(0, node_count_ - 1);
  std::uniform_int_distribution<std::size_t> dst_dist(0, node_count_ - 2);
  std::uniform_int_distribution<std::size_t> rate_dist(0, rates_.size() - 1);
  Demand d;
  d.src = src_dist(rng_);
  d.dst = dst_dist(rng_);
  if (d.dst >= d.src) ++d.dst;
  d.rate_gbps = rates_[rate_dist(rng_)];
  return d;
}

DemandSet generate_demands(const Topology& topology, std::size_t count,
                           std::uint64_t seed, std::span<const int> rates) {
  if (count == 0) throw DataError("demand count must be positive");
  DemandGenerator gen(topology.node_count(), seed, rates);
  DemandSet set;
  set.seed = seed;
  set.demands.reserve(count);
  for (std::size_t i = 0; i < count; ++i) set.demands.push_back(gen.next());
  return set;
}

void validate_demands(const Topology& topology,
                      std::span<const Demand> demands) {
  for (std::size_t i = 0; i < demands.size(); ++i) {
    const Demand& d = demands[i];
    if (d.src >= topology.node_count() || d.dst >= topology.node_count()) {
      throw DataError("demand " + std::to_string(i) +
                      " references an unknown node");
    }
    if (d.src == d.dst) {
      throw DataError("demand " + std::to_string(i) + " has equal endpoints");
    }
    if (d.rate_gbps <= 0) {
      throw DataError("demand " + std::to_string(i) +
                      " has a non-positive rate");
    }
  }
}

}  // namespace ppmplan
