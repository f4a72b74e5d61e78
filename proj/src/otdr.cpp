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

#include "ppmplan/otdr.hpp"

#include <algorithm>
#include <string>

#include "ppmplan/error.hpp"

namespace ppmplan {
namespace {

int ceil_div(int num, int den) { return num <= 0 ? 0 : (num + den - 1) / den; }

OtdrPlan plan_for(const Topology& topology, std::vector<bool> lit) {
  OtdrPlan plan;
  plan.per_node.assign(topology.node_count(), 0);
  plan.per_link_inline.assign(topology.undirected_count(), 0);
  std::vector<int> degree(topology.node_count(), 0);
  for (std::size_t u = 0; u < topology.undirected_count(); ++u) {
    if (!lit[u]) continue;
    const DirectedLink& link = topology.link(2 * u);
    ++degree[link.src];
    ++degree[link.dst];
    plan.per_link_inline[u] = inline_otdrs(link.spans);
    plan.total += plan.per_link_inline[u];
  }
  for (std::size_t n = 0; n < topology.node_count(); ++n) {
    plan.per_node[n] = node_otdrs(degree[n]);
    plan.total += plan.per_node[n];
  }
  plan.lit = std::move(lit);
  return plan;
}

}  // namespace

int inline_otdrs(int spans) { return ceil_div(spans - 2, 2); }

int node_otdrs(int degree) { return ceil_div(2 * degree, 4); }

OtdrPlan count_otdrs(const Topology& topology) {
  return plan_for(topology, std::vector<bool>(topology.undirected_count(), true));
}

OtdrPlan count_otdrs(const Topology& topology,
                     std::span<const LinkIndex> lit_links) {
  std::vector<bool> lit(topology.undirected_count(), false);
  for (LinkIndex l : lit_links) {
    if (l >= topology.link_count()) {
      throw DataError("unknown link index " + std::to_string(l));
    }
    lit[Topology::undirected_of(l)] = true;
  }
  return plan_for(topology, std::move(lit));
}

}  // namespace ppmplan
