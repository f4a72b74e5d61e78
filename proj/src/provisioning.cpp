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

#include "ppmplan/provisioning.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <limits>
#include <queue>
#include <set>

#include "ppmplan/error.hpp"

namespace ppmplan {

std::string_view to_string(Architecture arch) {
  return arch == Architecture::opaque ? "opaque" : "transparent";
}

Architecture parse_architecture(std::string_view text) {
  if (text == "opaque" || text == "Op") return Architecture::opaque;
  if (text == "transparent" || text == "Tr") return Architecture::transparent;
  throw DataError("unknown architecture '" + std::string(text) + "'");
}

ReachTable::ReachTable(std::vector<ReachEntry> rows) : rows_(std::move(rows)) {
  if (rows_.empty()) throw DataError("empty reach table");
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (rows_[i].rate_gbps <= 0 || !(rows_[i].reach_km > 0.0)) {
      throw DataError("reach table rows need positive rate and reach");
    }
    if (i > 0 && (rows_[i].rate_gbps >= rows_[i - 1].rate_gbps ||
                  rows_[i].reach_km <= rows_[i - 1].reach_km)) {
      throw DataError(
          "reach table must have decreasing rates and increasing reach");
    }
  }
}

ReachTable ReachTable::long_haul() {
  return ReachTable({
      {800, "PCS 64 QAM", 100.0, 150.0},
      {700, "PCS 64 QAM", 100.0, 400.0},
      {600, "16 QAM", 100.0, 700.0},
      {500, "PCS 16 QAM", 100.0, 1300.0},
      {400, "PCS 16 QAM", 100.0, 2500.0},
      {300, "PCS 16 QAM", 100.0, 4700.0},
      {200, "PCS 16 QAM", 100.0, 5700.0},
  });
}

std::optional<double> ReachTable::reach_for_demand(int rate_gbps) const {
  std::optional<double> best;
  for (const ReachEntry& row : rows_) {
    if (row.rate_gbps >= rate_gbps) best = row.reach_km;
  }
  return best;
}

std::optional<int> ReachTable::best_rate(double length_km) const {
  for (const ReachEntry& row : rows_) {
    if (row.reach_km >= length_km) return row.rate_gbps;
  }
  return std::nullopt;
}

double LightpathSet::rejection_fraction() const {
  const std::size_t n = offered();
  return n == 0 ? 0.0
                : static_cast<double>(rejected.size()) /
                      static_cast<double>(n);
}

double LightpathSet::carried_tbps() const {
  long long gbps = 0;
  for (const Assignment& a : accepted) gbps += a.demand.rate_gbps;
  return static_cast<double>(gbps) / 1000.0;
}

std::vector<LinkIndex> LightpathSet::lit_links() const {
  std::set<LinkIndex> lit;
  for (const Lightpath& lp : lightpaths) lit.insert(lp.route.begin(), lp.route.end());
  return {lit.begin(), lit.end()};
}

namespace {

double route_length(const Topology& topology, const Route& route) {
  double total = 0.0;
  for (LinkIndex l : route) total += topology.link(l).length_km;
  return total;
}

std::vector<NodeIndex> nodes_of(const Topology& topology, NodeIndex src,
                                const Route& route) {
  std::vector<NodeIndex> nodes{src};
  for (LinkIndex l : route) nodes.push_back(topology.link(l).dst);
  return nodes;
}

// Dijkstra by length; equal distances resolve towards the lower node index.
std::optional<Route> shortest_route(const Topology& topology, NodeIndex src,
                                    NodeIndex dst,
                                    const std::vector<char>& banned_nodes,
                                    const std::set<LinkIndex>& banned_links) {
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(topology.node_count(), inf);
  std::vector<LinkIndex> via(topology.node_count(),
                             std::numeric_limits<LinkIndex>::max());
  using Entry = std::pair<double, NodeIndex>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
  dist[src] = 0.0;
  queue.emplace(0.0, src);
  while (!queue.empty()) {
    auto [d, n] = queue.top();
    queue.pop();
    if (d > dist[n]) continue;
    if (n == dst) break;
    for (LinkIndex l : topology.out_links(n)) {
      const DirectedLink& link = topology.link(l);
      if (banned_nodes[link.dst] || banned_links.count(l)) continue;
      const double nd = d + link.length_km;
      if (nd < dist[link.dst]) {
        dist[link.dst] = nd;
        via[link.dst] = l;
        queue.emplace(nd, link.dst);
      }
    }
  }
  if (dist[dst] == inf) return std::nullopt;
  Route route;
  for (NodeIndex n = dst; n != src; n = topology.link(via[n]).src) {
    route.push_back(via[n]);
  }
  std::reverse(route.begin(), route.end());
  return route;
}

}  // namespace

std::vector<Route> k_shortest_routes(const Topology& topology, NodeIndex src,
                                     NodeIndex dst, int k) {
  if (src >= topology.node_count() || dst >= topology.node_count()) {
    throw DataError("route endpoints out of range");
  }
  std::vector<Route> found;
  if (src == dst || k <= 0) return found;
  std::vector<char> no_nodes(topology.node_count(), 0);
  auto first = shortest_route(topology, src, dst, no_nodes, {});
  if (!first) return found;
  found.push_back(*first);

  using Candidate = std::pair<double, std::vector<NodeIndex>>;
  std::set<Candidate> pool;
  std::map<std::vector<NodeIndex>, Route> pool_routes;
  while (static_cast<int>(found.size()) < k) {
    const Route& prev = found.back();
    const std::vector<NodeIndex> prev_nodes = nodes_of(topology, src, prev);
    for (std::size_t i = 0; i + 1 < prev_nodes.size(); ++i) {
      const NodeIndex spur = prev_nodes[i];
      std::set<LinkIndex> banned_links;
      for (const Route& r : found) {
        const auto nodes = nodes_of(topology, src, r);
        if (nodes.size() > i + 1 &&
            std::equal(nodes.begin(), nodes.begin() + static_cast<long>(i) + 1,
                       prev_nodes.begin())) {
          banned_links.insert(r[i]);
        }
      }
      std::vector<char> banned_nodes(topology.node_count(), 0);
      for (std::size_t j = 0; j < i; ++j) banned_nodes[prev_nodes[j]] = 1;
      auto spur_route =
          shortest_route(topology, spur, dst, banned_nodes, banned_links);
      if (!spur_route) continue;
      Route total(prev.begin(), prev.begin() + static_cast<long>(i));
      total.insert(total.end(), spur_route->begin(), spur_route->end());
      auto nodes = nodes_of(topology, src, total);
      if (pool_routes.count(nodes)) continue;
      bool known = false;
      for (const Route& r : found) known = known || r == total;
      if (known) continue;
      pool.emplace(route_length(topology, total), nodes);
      pool_routes.emplace(std::move(nodes), std::move(total));
    }
    if (pool.empty()) break;
    auto best = pool.begin();
    found.push_back(pool_routes.at(best->second));
    pool_routes.erase(best->second);
    pool.erase(best);
  }
  return found;
}

Provisioner::Provisioner(const Topology& topology, ProvisioningOptions options)
    : topology_(&topology), options_(std::move(options)) {
  if (options_.channels < 1 || options_.channels > 64) {
    throw DataError("channel count must be within [1, 64]");
  }
  if (options_.k_paths < 1) throw DataError("k_paths must be at least 1");
  if (options_.max_hops && *options_.max_hops < 1) {
    throw DataError("max_hops must be at least 1");
  }
  for (LinkIndex l = 0; l < topology.link_count(); l += 2) {
    if (topology.link(l).length_km > options_.reach.max_reach_km()) {
      throw DataError("link " + topology.link_label(l) + " (" +
                      std::to_string(topology.link(l).length_km) +
                      " km) exceeds the longest transponder reach");
    }
  }
  all_channels_ = options_.channels == 64
                      ? ~Mask{0}
                      : ((Mask{1} << options_.channels) - 1);
  used_.assign(topology.link_count(), 0);
}

double Provisioner::spectrum_occupation() const {
  if (used_.empty()) return 0.0;
  std::size_t busy = 0;
  for (Mask m : used_) busy += static_cast<std::size_t>(std::popcount(m));
  return static_cast<double>(busy) /
         static_cast<double>(used_.size() * options_.channels);
}

bool Provisioner::channel_used(LinkIndex link, int channel) const {
  return (used_.at(link) >> channel) & 1U;
}

const std::vector<Route>& Provisioner::candidates(NodeIndex src,
                                                  NodeIndex dst) {
  auto key = std::pair{src, dst};
  auto it = routes_.find(key);
  if (it == routes_.end()) {
    it = routes_
             .emplace(key, k_shortest_routes(*topology_, src, dst,
                                             options_.k_paths))
             .first;
  }
  return it->second;
}

std::vector<NodeIndex> Provisioner::route_nodes(const Route& route) const {
  return nodes_of(*topology_, topology_->link(route.front()).src, route);
}

Provisioner::Mask Provisioner::free_mask(
    std::span<const LinkIndex> links) const {
  Mask free = all_channels_;
  for (LinkIndex l : links) free &= ~used_[l];
  return free;
}

std::optional<std::size_t> Provisioner::groomable(
    NodeIndex from, NodeIndex to, std::span<const LinkIndex> segment,
    int rate) const {
  auto it = by_endpoints_.find({from, to});
  if (it == by_endpoints_.end()) return std::nullopt;
  for (std::size_t id : it->second) {
    const Lightpath& lp = state_.lightpaths[id];
    if (lp.spare_gbps() >= rate &&
        std::equal(lp.route.begin(), lp.route.end(), segment.begin(),
                   segment.end())) {
      return id;
    }
  }
  return std::nullopt;
}

std::size_t Provisioner::open_lightpath(std::span<const LinkIndex> segment,
                                        int rate, int channel) {
  Lightpath lp;
  lp.id = state_.lightpaths.size();
  lp.add_node = topology_->link(segment.front()).src;
  lp.drop_node = topology_->link(segment.back()).dst;
  lp.route.assign(segment.begin(), segment.end());
  lp.rate_gbps = rate;
  lp.channel = channel;
  for (LinkIndex l : segment) used_[l] |= Mask{1} << channel;
  by_endpoints_[{lp.add_node, lp.drop_node}].push_back(lp.id);
  state_.lightpaths.push_back(std::move(lp));
  return state_.lightpaths.back().id;
}

void Provisioner::carry(std::size_t lp, int rate) {
  state_.lightpaths[lp].carried_gbps += rate;
}

// Fewest existing lightpaths that chain along one candidate route.
bool Provisioner::groom_chain(const Demand& demand) {
  for (const Route& route : candidates(demand.src, demand.dst)) {
    const auto nodes = route_nodes(route);
    const std::size_t m = route.size();
    constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> best(m + 1, kNone), prev(m + 1), via(m + 1);
    best[0] = 0;
    for (std::size_t j = 1; j <= m; ++j) {
      for (std::size_t i = 0; i < j; ++i) {
        if (best[i] == kNone || best[i] + 1 >= best[j]) continue;
        std::span<const LinkIndex> segment(route.data() + i, j - i);
        if (auto lp = groomable(nodes[i], nodes[j], segment,
                                demand.rate_gbps)) {
          best[j] = best[i] + 1;
          prev[j] = i;
          via[j] = *lp;
        }
      }
    }
    if (best[m] == kNone) continue;
    Assignment assignment{demand, {}};
    for (std::size_t j = m; j > 0; j = prev[j]) {
      assignment.lightpaths.push_back(via[j]);
    }
    std::reverse(assignment.lightpaths.begin(), assignment.lightpaths.end());
    for (std::size_t lp : assignment.lightpaths) carry(lp, demand.rate_gbps);
    state_.accepted.push_back(std::move(assignment));
    return true;
  }
  return false;
}

bool Provisioner::serve_opaque(const Demand& demand) {
  const auto reach = options_.reach.reach_for_demand(demand.rate_gbps);
  if (!reach) return false;
  for (const Route& route : candidates(demand.src, demand.dst)) {
    // Per hop: groom onto an existing lightpath or open one on a free channel.
    struct Hop {
      std::optional<std::size_t> lp;
      int channel = 0;
    };
    std::vector<Hop> plan;
    for (LinkIndex l : route) {
      const DirectedLink& link = topology_->link(l);
      std::span<const LinkIndex> hop(&l, 1);
      if (auto lp = groomable(link.src, link.dst, hop, demand.rate_gbps)) {
        plan.push_back({lp, 0});
        continue;
      }
      const Mask free = free_mask(hop);
      if (link.length_km > *reach || free == 0) break;
      plan.push_back({std::nullopt, std::countr_zero(free)});
    }
    if (plan.size() != route.size()) continue;
    Assignment assignment{demand, {}};
    for (std::size_t h = 0; h < route.size(); ++h) {
      std::size_t lp;
      if (plan[h].lp) {
        lp = *plan[h].lp;
      } else {
        const double length = topology_->link(route[h]).length_km;
        lp = open_lightpath(std::span<const LinkIndex>(&route[h], 1),
                            *options_.reach.best_rate(length), plan[h].channel);
      }
      carry(lp, demand.rate_gbps);
      assignment.lightpaths.push_back(lp);
    }
    state_.accepted.push_back(std::move(assignment));
    return true;
  }
  return false;
}

bool Provisioner::serve_transparent(const Demand& demand) {
  const auto reach = options_.reach.reach_for_demand(demand.rate_gbps);
  if (!reach) return false;
  const std::size_t hop_cap =
      options_.max_hops ? static_cast<std::size_t>(*options_.max_hops)
                        : std::numeric_limits<std::size_t>::max();
  for (const Route& route : candidates(demand.src, demand.dst)) {
    const std::size_t m = route.size();
    std::vector<double> prefix(m + 1, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
      prefix[i + 1] = prefix[i] + topology_->link(route[i]).length_km;
    }
    // Fewest segments, each within reach and with a common free channel.
    constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> best(m + 1, kNone), prev(m + 1);
    best[0] = 0;
    for (std::size_t j = 1; j <= m; ++j) {
      for (std::size_t i = 0; i < j; ++i) {
        if (best[i] == kNone || best[i] + 1 >= best[j]) continue;
        if (j - i > hop_cap || prefix[j] - prefix[i] > *reach) continue;
        if (free_mask(std::span<const LinkIndex>(route.data() + i, j - i)) ==
            0) {
          continue;
        }
        best[j] = best[i] + 1;
        prev[j] = i;
      }
    }
    if (best[m] == kNone) continue;
    std::vector<std::pair<std::size_t, std::size_t>> segments;
    for (std::size_t j = m; j > 0; j = prev[j]) segments.emplace_back(prev[j], j);
    std::reverse(segments.begin(), segments.end());
    Assignment assignment{demand, {}};
    for (auto [i, j] : segments) {
      std::span<const LinkIndex> segment(route.data() + i, j - i);
      const int channel = std::countr_zero(free_mask(segment));
      const int rate = *options_.reach.best_rate(prefix[j] - prefix[i]);
      const std::size_t lp = open_lightpath(segment, rate, channel);
      carry(lp, demand.rate_gbps);
      assignment.lightpaths.push_back(lp);
    }
    state_.accepted.push_back(std::move(assignment));
    return true;
  }
  return false;
}

bool Provisioner::offer(const Demand& demand) {
  if (demand.src >= topology_->node_count() ||
      demand.dst >= topology_->node_count() || demand.src == demand.dst) {
    throw DataError("demand endpoints invalid for topology");
  }
  bool ok = groom_chain(demand);
  if (!ok) {
    ok = options_.architecture == Architecture::opaque
             ? serve_opaque(demand)
             : serve_transparent(demand);
  }
  if (!ok) state_.rejected.push_back(demand);
  return ok;
}

LightpathSet provision(const Topology& topology,
                       std::span<const Demand> demands,
                       const ProvisioningOptions& options) {
  validate_demands(topology, demands);
  Provisioner provisioner(topology, options);
  for (const Demand& d : demands) provisioner.offer(d);
  return provisioner.result();
}

}  // namespace ppmplan
