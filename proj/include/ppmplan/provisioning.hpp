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

#ifndef PPMPLAN_PROVISIONING_HPP_
#define PPMPLAN_PROVISIONING_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ppmplan/topology.hpp"
#include "ppmplan/traffic.hpp"

namespace ppmplan {

enum class Architecture { opaque, transparent };

std::string_view to_string(Architecture arch);
Architecture parse_architecture(std::string_view text);

struct ReachEntry {
  int rate_gbps = 0;
  std::string modulation;
  double spacing_ghz = 0.0;
  double reach_km = 0.0;
};

// Transponder operating points. Rows are ordered by strictly decreasing
// rate and strictly increasing reach.
class ReachTable {
 public:
  explicit ReachTable(std::vector<ReachEntry> rows);

  // 800G/150 km ... 200G/5700 km, 100 GHz spacing.
  static ReachTable long_haul();

  std::span<const ReachEntry> rows() const { return rows_; }
  double max_reach_km() const { return rows_.back().reach_km; }

  // Longest reach among rates that can carry `rate_gbps` on their own.
  std::optional<double> reach_for_demand(int rate_gbps) const;
  // Highest rate whose reach covers `length_km`.
  std::optional<int> best_rate(double length_km) const;

 private:
  std::vector<ReachEntry> rows_;
};

using Route = std::vector<LinkIndex>;

struct Lightpath {
  std::size_t id = 0;
  NodeIndex add_node = 0;
  NodeIndex drop_node = 0;
  Route route;
  int rate_gbps = 0;
  int channel = 0;
  int carried_gbps = 0;

  int spare_gbps() const { return rate_gbps - carried_gbps; }
  std::size_t hops() const { return route.size(); }
};

// How an accepted demand was served: the chain of lightpaths it rides.
struct Assignment {
  Demand demand;
  std::vector<std::size_t> lightpaths;
};

struct LightpathSet {
  std::vector<Lightpath> lightpaths;
  std::vector<Assignment> accepted;
  std::vector<Demand> rejected;

  // One transponder at each end of every lightpath.
  std::size_t transponder_count() const { return 2 * lightpaths.size(); }
  std::size_t offered() const { return accepted.size() + rejected.size(); }
  double rejection_fraction() const;
  double carried_tbps() const;
  // Directed links traversed by at least one lightpath, ascending.
  std::vector<LinkIndex> lit_links() const;
};

struct ProvisioningOptions {
  Architecture architecture = Architecture::transparent;
  ReachTable reach = ReachTable::long_haul();
  int k_paths = 3;
  int channels = 60;
  // Optional cap on links per lightpath, on top of the km reach.
  std::optional<int> max_hops;
};

// Up to k loopless routes by total length (Yen), shortest first. Equal
// lengths are ordered by node sequence.
std::vector<Route> k_shortest_routes(const Topology& topology, NodeIndex src,
                                     NodeIndex dst, int k);

// Incremental provisioning state. Demands are served in the order offered:
//  1. groom onto existing lightpaths when a chain with enough spare
//     capacity already connects src to dst along a candidate route;
//  2. otherwise open new lightpaths on the first candidate route that
//     admits them (opaque: one per link, grooming link by link;
//     transparent: fewest lightpaths within reach), first-fit channel;
//  3. otherwise reject.
class Provisioner {
 public:
  // Throws DataError if a link is longer than the longest reach.
  Provisioner(const Topology& topology, ProvisioningOptions options);
  Provisioner(Topology&&, ProvisioningOptions) = delete;

  // Returns true when the demand was accepted.
  bool offer(const Demand& demand);

  const LightpathSet& result() const { return state_; }
  const ProvisioningOptions& options() const { return options_; }
  const Topology& topology() const { return *topology_; }

  // Fraction of (link, channel) slots in use.
  double spectrum_occupation() const;
  bool channel_used(LinkIndex link, int channel) const;

 private:
  using Mask = std::uint64_t;

  const std::vector<Route>& candidates(NodeIndex src, NodeIndex dst);
  std::vector<NodeIndex> route_nodes(const Route& route) const;
  Mask free_mask(std::span<const LinkIndex> links) const;
  std::optional<std::size_t> groomable(NodeIndex from, NodeIndex to,
                                       std::span<const LinkIndex> segment,
                                       int rate) const;
  bool groom_chain(const Demand& demand);
  bool serve_opaque(const Demand& demand);
  bool serve_transparent(const Demand& demand);
  std::size_t open_lightpath(std::span<const LinkIndex> segment, int rate,
                             int channel);
  void carry(std::size_t lp, int rate);

  const Topology* topology_;
  ProvisioningOptions options_;
  Mask all_channels_;
  std::vector<Mask> used_;
  std::map<std::pair<NodeIndex, NodeIndex>, std::vector<Route>> routes_;
  std::map<std::pair<NodeIndex, NodeIndex>, std::vector<std::size_t>>
      by_endpoints_;
  LightpathSet state_;
};

LightpathSet provision(const Topology& topology,
                       std::span<const Demand> demands,
                       const ProvisioningOptions& options);

}  // namespace ppmplan

#endif  // PPMPLAN_PROVISIONING_HPP_
