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

#ifndef PPMPLAN_OTDR_HPP_
#define PPMPLAN_OTDR_HPP_

#include <span>
#include <vector>

#include "ppmplan/topology.hpp"

namespace ppmplan {

// OTDR modules needed to watch every lit fibre. Inline units are counted
// once per undirected link because one OTDR covers both directions.
struct OtdrPlan {
  std::vector<int> per_node;         // ceil(2 d_i / 4), lit degree only
  std::vector<int> per_link_inline;  // max(0, ceil((s - 2) / 2)), 0 if unlit
  std::vector<bool> lit;             // per undirected link
  int total = 0;
};

// Inline OTDRs for a link of `spans` spans.
int inline_otdrs(int spans);
// Node OTDRs for undirected degree `degree` (two fibres per degree, four
// fibres per card).
int node_otdrs(int degree);

// All links lit.
OtdrPlan count_otdrs(const Topology& topology);
// Only links in `lit_links` (directed indices; either direction lights the
// pair) count. Throws DataError on an index outside the topology.
OtdrPlan count_otdrs(const Topology& topology,
                     std::span<const LinkIndex> lit_links);

}  // namespace ppmplan

#endif  // PPMPLAN_OTDR_HPP_
