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

#ifndef PPMPLAN_TOPOLOGY_HPP_
#define PPMPLAN_TOPOLOGY_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "json.hpp"

namespace ppmplan {

using NodeIndex = std::size_t;
using LinkIndex = std::size_t;

inline constexpr double kDefaultSpanLengthKm = 80.0;
inline constexpr double kDefaultExtentKm = 1000.0;

struct DirectedLink {
  NodeIndex src = 0;
  NodeIndex dst = 0;
  double length_km = 0.0;
  int spans = 0;
};

struct UndirectedEdge {
  NodeIndex a = 0;
  NodeIndex b = 0;
  double length_km = 0.0;
};

// ceil(length / span_length), never below one.
int span_count(double length_km, double span_length_km);

// A bidirectional optical network. Every undirected edge u is stored as the
// directed pair (2u, 2u+1), so reverse(l) == l ^ 1 and both directions share
// length and span count. Immutable after construction.
class Topology {
 public:
  Topology(std::string name, double span_length_km,
           std::vector<std::string> node_names,
           std::span<const UndirectedEdge> edges);

  const std::string& name() const { return name_; }
  double span_length_km() const { return span_length_km_; }

  std::size_t node_count() const { return nodes_.size(); }
  std::size_t link_count() const { return links_.size(); }
  std::size_t undirected_count() const { return links_.size() / 2; }

  const std::vector<std::string>& node_names() const { return nodes_; }
  const std::string& node_name(NodeIndex n) const { return nodes_.at(n); }
  NodeIndex node_index(std::string_view name) const;

  std::span<const DirectedLink> links() const { return links_; }
  const DirectedLink& link(LinkIndex l) const { return links_.at(l); }
  static constexpr LinkIndex reverse(LinkIndex l) { return l ^ 1U; }
  static constexpr std::size_t undirected_of(LinkIndex l) { return l / 2; }

  std::optional<LinkIndex> find_link(NodeIndex src, NodeIndex dst) const;
  std::span<const LinkIndex> out_links(NodeIndex n) const {
    return out_links_.at(n);
  }

  // "A>B" for a link, "A>B>C" for a route.
  std::string link_label(LinkIndex l) const;
  std::string route_label(std::span<const LinkIndex> route) const;
  LinkIndex parse_link_label(std::string_view label) const;
  std::vector<LinkIndex> parse_route_label(std::string_view label) const;

  // Undirected edges in storage order.
  std::vector<UndirectedEdge> undirected_edges() const;

 private:
  std::string name_;
  double span_length_km_;
  std::vector<std::string> nodes_;
  std::unordered_map<std::string, NodeIndex> index_;
  std::vector<DirectedLink> links_;
  std::vector<std::vector<LinkIndex>> out_links_;
  std::map<std::pair<NodeIndex, NodeIndex>, LinkIndex> lookup_;
};

// Number of distinct neighbours of a node.
int node_degree(const Topology& topology, NodeIndex node);
int node_degree(const Topology& topology, std::string_view node);

// JSON schema:
//   { "name": str, "span_length_km": num, "nodes": [str],
//     "edges": [ { "a": str, "b": str, "length_km": num } ] }
// Edges are undirected; listing both directions with equal lengths is
// accepted and merged. `span_length_km` overrides the file value.
Topology topology_from_json(const nlohmann::json& doc,
                            std::optional<double> span_length_km = {});
nlohmann::json topology_to_json(const Topology& topology);
Topology load_topology(const std::filesystem::path& path,
                       std::optional<double> span_length_km = {});
void save_topology(const Topology& topology,
                   const std::filesystem::path& path);

// Bundled datasets ("n14", "j14") shipped under the data directory.
std::filesystem::path bundled_dataset(std::string_view name);

// Points drawn uniformly from [0, extent]^2, deterministic per seed.
std::vector<Eigen::Vector2d> sample_points(std::size_t n, std::uint64_t seed,
                                           double extent_km);

// Pairs (i < j) such that no third point lies strictly inside the circle
// with diameter ij, in lexicographic order.
std::vector<std::pair<std::size_t, std::size_t>> gabriel_edges(
    std::span<const Eigen::Vector2d> points);

Topology generate_gabriel(std::size_t n, std::uint64_t seed,
                          double extent_km = kDefaultExtentKm,
                          double span_length_km = kDefaultSpanLengthKm);

}  // namespace ppmplan

#endif  // PPMPLAN_TOPOLOGY_HPP_
