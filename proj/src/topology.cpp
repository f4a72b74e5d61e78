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

#include "ppmplan/topology.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "ppmplan/error.hpp"

namespace ppmplan {

int span_count(double length_km, double span_length_km) {
  if (!(span_length_km > 0.0)) {
    throw DataError("span length must be positive");
  }
  if (!(length_km > 0.0)) {
    throw DataError("link length must be positive");
  }
  const double ratio = length_km / span_length_km;
  // Guard against 160/80 evaluating to 2.0000000001.
  const double nearest = std::round(ratio);
  const double spans =
      std::abs(ratio - nearest) < 1e-9 ? nearest : std::ceil(ratio);
  return std::max(1, static_cast<int>(spans));
}

namespace {

void check_node_name(const std::string& name) {
  if (name.empty()) throw DataError("empty node name");
  for (char ch : name) {
    if (ch == '>' || ch == ',' || ch == '"' ||
        std::isspace(static_cast<unsigned char>(ch))) {
      throw DataError("node name '" + name +
                      "' contains a reserved character");
    }
  }
}

}  // namespace

Topology::Topology(std::string name, double span_length_km,
                   std::vector<std::string> node_names,
                   std::span<const UndirectedEdge> edges)
    : name_(std::move(name)),
      span_length_km_(span_length_km),
      nodes_(std::move(node_names)) {
  if (!(span_length_km_ > 0.0)) {
    throw DataError("span_length_km must be positive");
  }
  for (NodeIndex i = 0; i < nodes_.size(); ++i) {
    check_node_name(nodes_[i]);
    if (!index_.emplace(nodes_[i], i).second) {
      throw DataError("duplicate node '" + nodes_[i] + "'");
    }
  }
  out_links_.resize(nodes_.size());
  links_.reserve(2 * edges.size());
  for (const UndirectedEdge& e : edges) {
    if (e.a >= nodes_.size() || e.b >= nodes_.size()) {
      throw DataError("edge references an unknown node");
    }
    if (e.a == e.b) {
      throw DataError("self-loop at node '" + nodes_[e.a] + "'");
    }
    if (!(e.length_km > 0.0) || !std::isfinite(e.length_km)) {
      throw DataError("non-positive length on link " + nodes_[e.a] + "-" +
                      nodes_[e.b]);
    }
    const int spans = span_count(e.length_km, span_length_km_);
    const LinkIndex forward = links_.size();
    if (!lookup_.emplace(std::pair{e.a, e.b}, forward).second ||
        !lookup_.emplace(std::pair{e.b, e.a}, forward + 1).second) {
      throw DataError("duplicate link " + nodes_[e.a] + "-" + nodes_[e.b]);
    }
    links_.push_back({e.a, e.b, e.length_km, spans});
    links_.push_back({e.b, e.a, e.length_km, spans});
    out_links_[e.a].push_back(forward);
    out_links_[e.b].push_back(forward + 1);
  }
}

NodeIndex Topology::node_index(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) {
    throw DataError("unknown node '" + std::string(name) + "'");
  }
  return it->second;
}

std::optional<LinkIndex> Topology::find_link(NodeIndex src,
                                             NodeIndex dst) const {
  auto it = lookup_.find({src, dst});
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

std::string Topology::link_label(LinkIndex l) const {
  const DirectedLink& link = links_.at(l);
  return nodes_[link.src] + ">" + nodes_[link.dst];
}

std::string Topology::route_label(std::span<const LinkIndex> route) const {
  if (route.empty()) return {};
  std::string out = nodes_[links_.at(route.front()).src];
  for (LinkIndex l : route) {
    out += '>';
    out += nodes_[links_.at(l).dst];
  }
  return out;
}

LinkIndex Topology::parse_link_label(std::string_view label) const {
  auto route = parse_route_label(label);
  if (route.size() != 1) {
    throw DataError("'" + std::string(label) + "' is not a single link");
  }
  return route.front();
}

std::vector<LinkIndex> Topology::parse_route_label(
    std::string_view label) const {
  std::vector<NodeIndex> hops;
  std::size_t start = 0;
  while (true) {
    const std::size_t end = label.find('>', start);
    hops.push_back(node_index(label.substr(start, end - start)));
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  if (hops.size() < 2) {
    throw DataError("route '" + std::string(label) + "' has no links");
  }
  std::vector<LinkIndex> route;
  for (std::size_t i = 0; i + 1 < hops.size(); ++i) {
    auto l = find_link(hops[i], hops[i + 1]);
    if (!l) {
      throw DataError("route '" + std::string(label) +
                      "' uses a missing link");
    }
    route.push_back(*l);
  }
  return route;
}

std::vector<UndirectedEdge> Topology::undirected_edges() const {
  std::vector<UndirectedEdge> out;
  out.reserve(undirected_count());
  for (std::size_t u = 0; u < undirected_count(); ++u) {
    const DirectedLink& l = links_[2 * u];
    out.push_back({l.src, l.dst, l.length_km});
  }
  return out;
}

int node_degree(const Topology& topology, NodeIndex node) {
  if (node >= topology.node_count()) {
    throw DataError("unknown node index " + std::to_string(node));
  }
  std::set<NodeIndex> neighbours;
  for (LinkIndex l : topology.out_links(node)) {
    neighbours.insert(topology.link(l).dst);
  }
  return static_cast<int>(neighbours.size());
}

int node_degree(const Topology& topology, std::string_view node) {
  return node_degree(topology, topology.node_index(node));
}

Topology topology_from_json(const nlohmann::json& doc,
                            std::optional<double> span_length_km) {
  try {
    const std::string name = doc.value("name", std::string("unnamed"));
    double span = span_length_km.value_or(
        doc.value("span_length_km", kDefaultSpanLengthKm));
    std::vector<std::string> nodes =
        doc.at("nodes").get<std::vector<std::string>>();
    std::unordered_map<std::string, NodeIndex> index;
    for (NodeIndex i = 0; i < nodes.size(); ++i) index.emplace(nodes[i], i);

    // Merge both-direction listings; reject asymmetric lengths.
    struct Seen {
      std::size_t edge;
      NodeIndex a;
      bool reverse_seen;
    };
    std::map<std::pair<NodeIndex, NodeIndex>, Seen> seen;
    std::vector<UndirectedEdge> edges;
    for (const auto& e : doc.at("edges")) {
      const std::string a = e.at("a").get<std::string>();
      const std::string b = e.at("b").get<std::string>();
      const double length = e.at("length_km").get<double>();
      auto ia = index.find(a);
      auto ib = index.find(b);
      if (ia == index.end() || ib == index.end()) {
        throw DataError("edge " + a + "-" + b + " references unknown node");
      }
      if (!(length > 0.0)) {
        throw DataError("non-positive length on link " + a + "-" + b);
      }
      const auto key = std::minmax(ia->second, ib->second);
      auto it = seen.find(key);
      if (it == seen.end()) {
        seen.emplace(key, Seen{edges.size(), ia->second, false});
        edges.push_back({ia->second, ib->second, length});
        continue;
      }
      Seen& prior = it->second;
      if (prior.a == ia->second || prior.reverse_seen) {
        throw DataError("duplicate link " + a + "-" + b);
      }
      if (edges[prior.edge].length_km != length) {
        throw DataError("asymmetric link " + a + "-" + b + ": " +
                        std::to_string(edges[prior.edge].length_km) +
                        " vs " + std::to_string(length) + " km");
      }
      prior.reverse_seen = true;
    }
    return Topology(name, span, std::move(nodes), edges);
  } catch (const nlohmann::json::exception& ex) {
    throw DataError(std::string("topology schema error: ") + ex.what());
  }
}

nlohmann::json topology_to_json(const Topology& topology) {
  nlohmann::json doc;
  doc["name"] = topology.name();
  doc["span_length_km"] = topology.span_length_km();
  doc["nodes"] = topology.node_names();
  nlohmann::json edges = nlohmann::json::array();
  for (const UndirectedEdge& e : topology.undirected_edges()) {
    edges.push_back({{"a", topology.node_name(e.a)},
                     {"b", topology.node_name(e.b)},
                     {"length_km", e.length_km}});
  }
  doc["edges"] = std::move(edges);
  return doc;
}

Topology load_topology(const std::filesystem::path& path,
                       std::optional<double> span_length_km) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open topology file " + path.string());
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& ex) {
    throw DataError("malformed topology file " + path.string() + ": " +
                    ex.what());
  }
  return topology_from_json(doc, span_length_km);
}

void save_topology(const Topology& topology,
                   const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path.string());
  out << topology_to_json(topology).dump(2) << '\n';
}

std::filesystem::path bundled_dataset(std::string_view name) {
  std::filesystem::path path =
      std::filesystem::path(PPMPLAN_DATA_DIR) / (std::string(name) + ".json");
  if (!std::filesystem::exists(path)) {
    throw DataError("no bundled dataset '" + std::string(name) + "'");
  }
  return path;
}

std::vector<Eigen::Vector2d> sample_points(std::size_t n, std::uint64_t seed,
                                           double extent_km) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(0.0, extent_km);
  std::vector<Eigen::Vector2d> points(n);
  for (auto& p : points) {
    const double x = coord(rng);
    const double y = coord(rng);
    p = {x, y};
  }
  return points;
}

std::vector<std::pair<std::size_t, std::size_t>> gabriel_edges(
    std::span<const Eigen::Vector2d> points) {
  const std::size_t n = points.size();
  // Witnesses for pair (i, j) satisfy (p_i - w).(p_j - w) < 0, i.e. the angle
  // at w is obtuse; only points within the circle's x-band can qualify.
  std::vector<std::size_t> by_x(n);
  for (std::size_t i = 0; i < n; ++i) by_x[i] = i;
  std::sort(by_x.begin(), by_x.end(), [&](std::size_t a, std::size_t b) {
    return points[a].x() < points[b].x() ||
           (points[a].x() == points[b].x() && a < b);
  });
  std::vector<double> xs(n);
  for (std::size_t k = 0; k < n; ++k) xs[k] = points[by_x[k]].x();

  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const Eigen::Vector2d& u = points[i];
      const Eigen::Vector2d& v = points[j];
      const double cx = 0.5 * (u.x() + v.x());
      const double r = 0.5 * (u - v).norm();
      auto lo = std::lower_bound(xs.begin(), xs.end(), cx - r);
      auto hi = std::upper_bound(xs.begin(), xs.end(), cx + r);
      bool blocked = false;
      for (auto it = lo; it != hi && !blocked; ++it) {
        const std::size_t w = by_x[static_cast<std::size_t>(it - xs.begin())];
        if (w == i || w == j) continue;
        blocked = (u - points[w]).dot(v - points[w]) < 0.0;
      }
      if (!blocked) edges.emplace_back(i, j);
    }
  }
  return edges;
}

Topology generate_gabriel(std::size_t n, std::uint64_t seed, double extent_km,
                          double span_length_km) {
  if (n < 2) throw DataError("a Gabriel graph needs at least 2 nodes");
  if (!(extent_km > 0.0)) throw DataError("extent must be positive");
  const auto points = sample_points(n, seed, extent_km);
  std::vector<std::string> names(n);
  for (std::size_t i = 0; i < n; ++i) names[i] = "n" + std::to_string(i);
  std::vector<UndirectedEdge> edges;
  for (auto [i, j] : gabriel_edges(points)) {
    // Coincident points would give a zero-length link.
    const double length = std::max((points[i] - points[j]).norm(), 1e-6);
    edges.push_back({i, j, length});
  }
  std::ostringstream name;
  name << "gabriel-n" << n << "-s" << seed;
  return Topology(name.str(), span_length_km, std::move(names), edges);
}

}  // namespace ppmplan
