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

#include <numeric>
#include <random>

#include "doctest.h"
#include "ppmplan/error.hpp"
#include "ppmplan/otdr.hpp"
#include "ppmplan/provisioning.hpp"
#include "ppmplan/traffic.hpp"

using namespace ppmplan;

namespace {

// A single fibre whose length spans exactly `spans` amplifier sections.
Topology pair(int spans) {
  const UndirectedEdge e{0, 1, 80.0 * spans};
  return Topology("pair", 80.0, {"A", "B"}, std::span(&e, 1));
}

int sum(const std::vector<int>& v) { return std::accumulate(v.begin(), v.end(), 0); }

}  // namespace

TEST_CASE("per-link and per-node terms") {
  CHECK(inline_otdrs(0) == 0);
  CHECK(inline_otdrs(1) == 0);
  CHECK(inline_otdrs(2) == 0);
  CHECK(inline_otdrs(3) == 1);
  CHECK(inline_otdrs(4) == 1);
  CHECK(inline_otdrs(6) == 2);
  CHECK(inline_otdrs(7) == 3);
  CHECK(node_otdrs(0) == 0);
  CHECK(node_otdrs(1) == 1);
  CHECK(node_otdrs(2) == 1);
  CHECK(node_otdrs(3) == 2);
  CHECK(node_otdrs(4) == 2);
  CHECK(node_otdrs(5) == 3);
}

TEST_CASE("one-span link needs only the node cards") {
  const OtdrPlan plan = count_otdrs(pair(1));
  CHECK(plan.per_link_inline == std::vector<int>{0});
  CHECK(plan.per_node == std::vector<int>{1, 1});
  CHECK(plan.total == 2);
}

TEST_CASE("six-span link adds two inline cards") {
  const OtdrPlan plan = count_otdrs(pair(6));
  CHECK(plan.per_link_inline == std::vector<int>{2});
  CHECK(plan.total == 4);
}

TEST_CASE("bundled datasets") {
  const Topology n14 = load_topology(bundled_dataset("n14"));
  const Topology j14 = load_topology(bundled_dataset("j14"));
  const OtdrPlan a = count_otdrs(n14);
  const OtdrPlan b = count_otdrs(j14);
  CHECK(a.total == 154);
  CHECK(b.total == 37);
  CHECK(a.total == sum(a.per_node) + sum(a.per_link_inline));
  CHECK(b.total == sum(b.per_node) + sum(b.per_link_inline));
  for (std::size_t n = 0; n < n14.node_count(); ++n) {
    CHECK(a.per_node[n] == node_otdrs(node_degree(n14, n)));
  }
}

TEST_CASE("inline term is counted once per fibre pair") {
  const Topology t = load_topology(bundled_dataset("n14"));
  int directed = 0;
  for (const DirectedLink& l : t.links()) directed += inline_otdrs(l.spans);
  const OtdrPlan plan = count_otdrs(t);
  CHECK(directed == 2 * sum(plan.per_link_inline));
}

TEST_CASE("only lit links are monitored") {
  const Topology t = load_topology(bundled_dataset("n14"));
  const OtdrPlan all = count_otdrs(t);
  CHECK(count_otdrs(t, std::vector<LinkIndex>{}).total == 0);

  // Lighting either direction of a pair lights the pair.
  const OtdrPlan fwd = count_otdrs(t, std::vector<LinkIndex>{0});
  const OtdrPlan rev = count_otdrs(t, std::vector<LinkIndex>{1});
  CHECK(fwd.total == rev.total);
  CHECK(fwd.lit == rev.lit);
  CHECK(fwd.total == inline_otdrs(t.link(0).spans) + 2);

  std::vector<LinkIndex> every(t.link_count());
  std::iota(every.begin(), every.end(), LinkIndex{0});
  CHECK(count_otdrs(t, every).total == all.total);
}

TEST_CASE("lighting more links never lowers the count") {
  const Topology t = load_topology(bundled_dataset("j14"));
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<LinkIndex> order(t.link_count());
    std::iota(order.begin(), order.end(), LinkIndex{0});
    std::shuffle(order.begin(), order.end(), rng);
    int previous = 0;
    for (std::size_t k = 0; k <= order.size(); ++k) {
      const OtdrPlan plan =
          count_otdrs(t, std::span<const LinkIndex>(order.data(), k));
      CHECK(plan.total >= previous);
      for (std::size_t u = 0; u < t.undirected_count(); ++u) {
        if (!plan.lit[u]) CHECK(plan.per_link_inline[u] == 0);
      }
      previous = plan.total;
    }
    CHECK(previous == count_otdrs(t).total);
  }
}

TEST_CASE("unknown link index is rejected") {
  const Topology t = pair(3);
  CHECK_THROWS_AS(count_otdrs(t, std::vector<LinkIndex>{2}), DataError);
}

TEST_CASE("the count depends on lit fibres, not on the architecture") {
  const Topology t = load_topology(bundled_dataset("n14"));
  const auto demands = generate_demands(t, 40, 5).demands;
  ProvisioningOptions op, tr;
  op.architecture = Architecture::opaque;
  tr.architecture = Architecture::transparent;
  const LightpathSet a = provision(t, demands, op);
  const LightpathSet b = provision(t, demands, tr);
  const OtdrPlan pa = count_otdrs(t, a.lit_links());
  const OtdrPlan pb = count_otdrs(t, b.lit_links());
  CHECK(pa.total <= count_otdrs(t).total);
  if (pa.lit == pb.lit) CHECK(pa.total == pb.total);
}
