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

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "doctest.h"
#include "ppmplan/error.hpp"
#include "ppmplan/provisioning.hpp"
#include "ppmplan/traffic.hpp"

using namespace ppmplan;

namespace {

Topology line(std::vector<double> lengths) {
  nlohmann::json doc = {{"name", "line"}, {"span_length_km", 80}};
  std::vector<std::string> nodes;
  for (std::size_t i = 0; i <= lengths.size(); ++i) {
    nodes.push_back(std::string(1, static_cast<char>('A' + i)));
  }
  doc["nodes"] = nodes;
  doc["edges"] = nlohmann::json::array();
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    doc["edges"].push_back(
        {{"a", nodes[i]}, {"b", nodes[i + 1]}, {"length_km", lengths[i]}});
  }
  return topology_from_json(doc);
}

ProvisioningOptions with(Architecture a) {
  ProvisioningOptions o;
  o.architecture = a;
  return o;
}

double route_length(const Topology& t, const Route& r) {
  double s = 0;
  for (LinkIndex l : r) s += t.link(l).length_km;
  return s;
}

// Every simple path by depth-first search, ordered by (length, nodes).
std::vector<Route> all_simple_paths(const Topology& t, NodeIndex src,
                                    NodeIndex dst) {
  std::vector<Route> out;
  Route path;
  std::vector<char> on(t.node_count(), 0);
  auto dfs = [&](auto&& self, NodeIndex u) -> void {
    if (u == dst) {
      out.push_back(path);
      return;
    }
    on[u] = 1;
    for (LinkIndex l : t.out_links(u)) {
      const NodeIndex v = t.link(l).dst;
      if (on[v]) continue;
      path.push_back(l);
      self(self, v);
      path.pop_back();
    }
    on[u] = 0;
  };
  dfs(dfs, src);
  std::sort(out.begin(), out.end(), [&](const Route& a, const Route& b) {
    const double la = route_length(t, a), lb = route_length(t, b);
    if (la != lb) return la < lb;
    std::vector<NodeIndex> na{t.link(a.front()).src}, nb{t.link(b.front()).src};
    for (LinkIndex l : a) na.push_back(t.link(l).dst);
    for (LinkIndex l : b) nb.push_back(t.link(l).dst);
    return na < nb;
  });
  return out;
}

void check_invariants(const Topology& t, const LightpathSet& set,
                      const ProvisioningOptions& o) {
  std::set<std::pair<LinkIndex, int>> slots;
  for (const Lightpath& lp : set.lightpaths) {
    REQUIRE(!lp.route.empty());
    CHECK(lp.carried_gbps <= lp.rate_gbps);
    CHECK(lp.channel >= 0);
    CHECK(lp.channel < o.channels);
    CHECK(t.link(lp.route.front()).src == lp.add_node);
    CHECK(t.link(lp.route.back()).dst == lp.drop_node);
    std::set<NodeIndex> seen{lp.add_node};
    for (std::size_t i = 0; i < lp.route.size(); ++i) {
      if (i > 0) CHECK(t.link(lp.route[i - 1]).dst == t.link(lp.route[i]).src);
      CHECK(seen.insert(t.link(lp.route[i]).dst).second);
      CHECK(slots.insert({lp.route[i], lp.channel}).second);
    }
    double reach = 0;
    for (const auto& row : o.reach.rows()) {
      if (row.rate_gbps == lp.rate_gbps) reach = row.reach_km;
    }
    CHECK(route_length(t, lp.route) <= reach);
    if (o.architecture == Architecture::opaque) CHECK(lp.hops() == 1);
    if (o.max_hops) CHECK(lp.hops() <= static_cast<std::size_t>(*o.max_hops));
  }
  // Each accepted demand rides a chain from src to dst; every lightpath on
  // the chain carries its full rate.
  std::map<std::size_t, long long> load;
  for (const Assignment& a : set.accepted) {
    REQUIRE(!a.lightpaths.empty());
    CHECK(set.lightpaths[a.lightpaths.front()].add_node == a.demand.src);
    CHECK(set.lightpaths[a.lightpaths.back()].drop_node == a.demand.dst);
    for (std::size_t i = 1; i < a.lightpaths.size(); ++i) {
      CHECK(set.lightpaths[a.lightpaths[i - 1]].drop_node ==
            set.lightpaths[a.lightpaths[i]].add_node);
    }
    for (std::size_t lp : a.lightpaths) load[lp] += a.demand.rate_gbps;
  }
  for (const Lightpath& lp : set.lightpaths) CHECK(load[lp.id] == lp.carried_gbps);
}

}  // namespace

TEST_CASE("reach table") {
  const ReachTable r = ReachTable::long_haul();
  REQUIRE(r.rows().size() == 7);
  CHECK(r.rows().front().rate_gbps == 800);
  CHECK(r.rows().front().reach_km == 150);
  CHECK(r.rows().back().rate_gbps == 200);
  CHECK(r.rows().back().reach_km == 5700);
  for (const auto& row : r.rows()) CHECK(row.spacing_ghz == 100);
  CHECK(r.best_rate(100) == 800);
  CHECK(r.best_rate(500) == 600);
  CHECK(r.best_rate(5700) == 200);
  CHECK_FALSE(r.best_rate(5701).has_value());
  CHECK(r.reach_for_demand(400) == 2500);
  CHECK(r.reach_for_demand(100) == 5700);
  CHECK_FALSE(r.reach_for_demand(900).has_value());
  CHECK_THROWS_AS(ReachTable({{200, "x", 100, 500}, {400, "y", 100, 100}}), DataError);
  CHECK_THROWS_AS(ReachTable({}), DataError);
}

TEST_CASE("one 100 km link: 800G lightpath, then grooming") {
  const Topology t = line({100});
  Provisioner p(t, with(Architecture::transparent));
  REQUIRE(p.offer({0, 1, 400}));
  REQUIRE(p.result().lightpaths.size() == 1);
  const Lightpath& lp = p.result().lightpaths[0];
  CHECK(lp.rate_gbps == 800);
  CHECK(lp.carried_gbps == 400);
  CHECK(lp.spare_gbps() == 400);
  CHECK(lp.channel == 0);

  REQUIRE(p.offer({0, 1, 400}));
  CHECK(p.result().lightpaths.size() == 1);
  CHECK(p.result().transponder_count() == 2);
  CHECK(p.result().lightpaths[0].spare_gbps() == 0);

  REQUIRE(p.offer({0, 1, 100}));
  CHECK(p.result().lightpaths.size() == 2);
  CHECK(p.result().lightpaths[1].channel == 1);
}

TEST_CASE("a 500 km lightpath runs at 600G") {
  const Topology one = line({500});
  Provisioner single(one, with(Architecture::transparent));
  REQUIRE(single.offer({0, 1, 400}));
  CHECK(single.result().lightpaths[0].rate_gbps == 600);

  const Topology three = line({200, 100, 200});
  Provisioner multi(three, with(Architecture::transparent));
  REQUIRE(multi.offer({0, 3, 400}));
  REQUIRE(multi.result().lightpaths.size() == 1);
  CHECK(multi.result().lightpaths[0].hops() == 3);
  CHECK(multi.result().lightpaths[0].rate_gbps == 600);
}

TEST_CASE("the 61st lightpath on a link is rejected") {
  const Topology t = line({100});
  for (Architecture a : {Architecture::opaque, Architecture::transparent}) {
    Provisioner p(t, with(a));
    for (int i = 0; i < 60; ++i) CHECK(p.offer({0, 1, 500}));
    CHECK_FALSE(p.offer({0, 1, 500}));
    CHECK(p.result().lightpaths.size() == 60);
    CHECK(p.result().rejected.size() == 1);
    CHECK(p.spectrum_occupation() == doctest::Approx(0.5));
    CHECK(p.offer({1, 0, 500}));
  }
}

TEST_CASE("opaque serves hop by hop and grooms per link") {
  const Topology t = line({100, 100});
  Provisioner p(t, with(Architecture::opaque));
  REQUIRE(p.offer({0, 2, 300}));
  CHECK(p.result().lightpaths.size() == 2);
  REQUIRE(p.offer({0, 1, 300}));
  CHECK(p.result().lightpaths.size() == 2);
  REQUIRE(p.offer({1, 2, 300}));
  CHECK(p.result().lightpaths.size() == 2);
  check_invariants(t, p.result(), with(Architecture::opaque));
}

TEST_CASE("transparent regenerates when reach runs out") {
  // 400G needs 2500 km per lightpath; 3 x 1000 km needs two of them.
  const Topology t = line({1000, 1000, 1000});
  Provisioner p(t, with(Architecture::transparent));
  REQUIRE(p.offer({0, 3, 400}));
  CHECK(p.result().lightpaths.size() == 2);
  check_invariants(t, p.result(), with(Architecture::transparent));
}

TEST_CASE("hop cap splits long lightpaths") {
  const Topology t = line({10, 10, 10, 10, 10});
  ProvisioningOptions o = with(Architecture::transparent);
  o.max_hops = 2;
  Provisioner p(t, o);
  REQUIRE(p.offer({0, 5, 100}));
  CHECK(p.result().lightpaths.size() == 3);
  check_invariants(t, p.result(), o);
}

TEST_CASE("links beyond the longest reach are a configuration error") {
  const Topology far = line({6000});
  const Topology near = line({10});
  CHECK_THROWS_AS(Provisioner(far, {}), DataError);
  ProvisioningOptions o;
  o.channels = 65;
  CHECK_THROWS_AS(Provisioner(near, o), DataError);
  o.channels = 60;
  o.k_paths = 0;
  CHECK_THROWS_AS(Provisioner(near, o), DataError);
}

TEST_CASE("k shortest routes match exhaustive enumeration") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> len(50, 900);
  for (int trial = 0; trial < 20; ++trial) {
    Topology g = generate_gabriel(9, 100 + trial, 1000);
    // Random lengths break ties so the order is unique.
    nlohmann::json doc = topology_to_json(g);
    for (auto& e : doc["edges"]) e["length_km"] = len(rng);
    const Topology t = topology_from_json(doc);
    for (NodeIndex s = 0; s < t.node_count(); ++s) {
      for (NodeIndex d = 0; d < t.node_count(); ++d) {
        if (s == d) continue;
        const auto all = all_simple_paths(t, s, d);
        const auto k = k_shortest_routes(t, s, d, 4);
        REQUIRE(k.size() == std::min<std::size_t>(4, all.size()));
        for (std::size_t i = 0; i < k.size(); ++i) CHECK(k[i] == all[i]);
      }
    }
  }
}

TEST_CASE("k shortest routes with ties keep the right lengths") {
  const Topology t = load_topology(bundled_dataset("j14"));
  for (NodeIndex s = 0; s < t.node_count(); ++s) {
    for (NodeIndex d = 0; d < t.node_count(); ++d) {
      if (s == d) continue;
      const auto all = all_simple_paths(t, s, d);
      const auto k = k_shortest_routes(t, s, d, 3);
      REQUIRE(k.size() == 3);
      for (std::size_t i = 0; i < 3; ++i) {
        CHECK(route_length(t, k[i]) == doctest::Approx(route_length(t, all[i])));
      }
      CHECK(std::set<Route>(k.begin(), k.end()).size() == 3);
    }
  }
}

TEST_CASE("sampled scenarios keep every invariant") {
  for (const char* name : {"n14", "j14"}) {
    const Topology t = load_topology(bundled_dataset(name));
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
      const DemandSet d = generate_demands(t, 900, seed);
      for (Architecture a : {Architecture::opaque, Architecture::transparent}) {
        const auto o = with(a);
        const LightpathSet set = provision(t, d.demands, o);
        check_invariants(t, set, o);
        CHECK(set.offered() == d.demands.size());
        long long accepted = 0;
        for (const auto& as : set.accepted) accepted += as.demand.rate_gbps;
        CHECK(set.carried_tbps() == doctest::Approx(accepted / 1000.0));
      }
    }
  }
}

TEST_CASE("bypass saves transponders on sampled N14 loads") {
  const Topology t = load_topology(bundled_dataset("n14"));
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    // Light enough that neither architecture rejects.
    const DemandSet d = generate_demands(t, 300, seed);
    const auto op = provision(t, d.demands, with(Architecture::opaque));
    const auto tr = provision(t, d.demands, with(Architecture::transparent));
    REQUIRE(op.rejected.empty());
    REQUIRE(tr.rejected.empty());
    CHECK(tr.transponder_count() <= op.transponder_count());
  }
}

TEST_CASE("bypass can cost transponders on adversarial orders") {
  // A->C opens one bypass lightpath; A->B and B->C then need their own,
  // while the opaque run grooms both onto the hops it already lit.
  const Topology t = line({100, 100});
  const std::vector<Demand> d{{0, 2, 100}, {0, 1, 100}, {1, 2, 100}};
  const auto op = provision(t, d, with(Architecture::opaque));
  const auto tr = provision(t, d, with(Architecture::transparent));
  CHECK(op.transponder_count() == 4);
  CHECK(tr.transponder_count() == 6);
}

TEST_CASE("provisioning is deterministic") {
  const Topology t = load_topology(bundled_dataset("n14"));
  const DemandSet d = generate_demands(t, 700, 9);
  const auto a = provision(t, d.demands, {});
  const auto b = provision(t, d.demands, {});
  REQUIRE(a.lightpaths.size() == b.lightpaths.size());
  for (std::size_t i = 0; i < a.lightpaths.size(); ++i) {
    CHECK(a.lightpaths[i].route == b.lightpaths[i].route);
    CHECK(a.lightpaths[i].channel == b.lightpaths[i].channel);
    CHECK(a.lightpaths[i].carried_gbps == b.lightpaths[i].carried_gbps);
  }
}
