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

#include "ppmplan/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <string_view>
#include <vector>

#include "ppmplan/error.hpp"

namespace ppmplan {
namespace {

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    out.push_back(line.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

template <typename T>
T parse_number(std::string_view text, const std::string& what) {
  T value{};
  const auto [end, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || end != text.data() + text.size()) {
    throw DataError("bad " + what + " '" + std::string(text) + "'");
  }
  return value;
}

// Data rows of a CSV with the expected header, comments skipped.
std::vector<std::vector<std::string_view>> csv_rows(
    const std::string& text, std::string_view header, std::size_t fields,
    const std::string& source) {
  std::vector<std::vector<std::string_view>> rows;
  std::string_view rest(text);
  bool seen_header = false;
  std::size_t line_no = 0;
  while (!rest.empty()) {
    const auto nl = rest.find('\n');
    std::string_view line = rest.substr(0, nl);
    rest = nl == std::string_view::npos ? std::string_view{} : rest.substr(nl + 1);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;
    if (!seen_header) {
      if (line != header) {
        throw DataError(source + ": expected header '" + std::string(header) +
                        "'");
      }
      seen_header = true;
      continue;
    }
    auto row = split(line, ',');
    if (row.size() != fields) {
      throw DataError(source + ":" + std::to_string(line_no) + ": expected " +
                      std::to_string(fields) + " fields");
    }
    rows.push_back(std::move(row));
  }
  if (!seen_header) throw DataError(source + ": missing header");
  return rows;
}

std::string hash_line(const std::string& config_hash) {
  return config_hash.empty() ? std::string{}
                             : "# config_hash=" + config_hash + "\n";
}

std::filesystem::path sidecar(const std::filesystem::path& csv) {
  auto p = csv;
  p.replace_extension(".json");
  return p;
}

void stamp(Json& doc, const std::string& config_hash) {
  if (!config_hash.empty()) doc["config_hash"] = config_hash;
}

}  // namespace

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  out << text;
  if (!out) throw DataError("failed writing " + path.string());
}

Json read_json(const std::filesystem::path& path) {
  try {
    return Json::parse(read_text(path));
  } catch (const nlohmann::json::exception& ex) {
    throw DataError(path.string() + ": " + ex.what());
  }
}

void write_json(const std::filesystem::path& path, const Json& doc) {
  write_text(path, doc.dump(2) + "\n");
}

std::string demands_csv(const DemandSet& demands, const Topology& topology,
                        const std::string& config_hash) {
  std::string out = hash_line(config_hash) + "src,dst,rate_gbps\n";
  for (const Demand& d : demands.demands) {
    out += topology.node_name(d.src) + "," + topology.node_name(d.dst) + "," +
           std::to_string(d.rate_gbps) + "\n";
  }
  return out;
}

void save_demands(const DemandSet& demands, const Topology& topology,
                  const std::filesystem::path& csv,
                  const std::string& config_hash) {
  write_text(csv, demands_csv(demands, topology, config_hash));
  Json meta;
  meta["seed"] = demands.seed;
  meta["count"] = demands.demands.size();
  meta["total_tbps"] = demands.total_tbps();
  meta["topology"] = topology.name();
  stamp(meta, config_hash);
  write_json(sidecar(csv), meta);
}

DemandSet load_demands(const std::filesystem::path& csv,
                       const Topology& topology) {
  const std::string text = read_text(csv);
  DemandSet set;
  for (const auto& row : csv_rows(text, "src,dst,rate_gbps", 3, csv.string())) {
    Demand d;
    d.src = topology.node_index(row[0]);
    d.dst = topology.node_index(row[1]);
    d.rate_gbps = parse_number<int>(row[2], "rate");
    set.demands.push_back(d);
  }
  validate_demands(topology, set.demands);
  if (std::filesystem::exists(sidecar(csv))) {
    try {
      set.seed = read_json(sidecar(csv)).at("seed").get<std::uint64_t>();
    } catch (const nlohmann::json::exception& ex) {
      throw DataError(sidecar(csv).string() + ": " + ex.what());
    }
  }
  return set;
}

std::string lightpaths_csv(const LightpathSet& set, const Topology& topology,
                           const std::string& config_hash) {
  std::string out =
      hash_line(config_hash) +
      "lp_id,add_node,drop_node,route,rate_gbps,channel,carried_gbps\n";
  for (const Lightpath& lp : set.lightpaths) {
    out += std::to_string(lp.id) + "," + topology.node_name(lp.add_node) +
           "," + topology.node_name(lp.drop_node) + "," +
           topology.route_label(lp.route) + "," +
           std::to_string(lp.rate_gbps) + "," + std::to_string(lp.channel) +
           "," + std::to_string(lp.carried_gbps) + "\n";
  }
  return out;
}

Json provision_summary_json(const ProvisionSummary& s,
                            const std::string& config_hash) {
  Json doc;
  doc["architecture"] = std::string(to_string(s.architecture));
  doc["lightpaths"] = s.lightpaths;
  doc["accepted"] = s.accepted;
  doc["rejected"] = s.rejected;
  doc["carried_tbps"] = s.carried_tbps;
  doc["spectrum_occupation"] = s.spectrum_occupation;
  stamp(doc, config_hash);
  return doc;
}

ProvisionSummary provision_summary_from_json(const Json& doc) {
  try {
    ProvisionSummary s;
    s.architecture =
        parse_architecture(doc.at("architecture").get<std::string>());
    s.lightpaths = doc.at("lightpaths").get<std::size_t>();
    s.accepted = doc.at("accepted").get<std::size_t>();
    s.rejected = doc.at("rejected").get<std::size_t>();
    s.carried_tbps = doc.at("carried_tbps").get<double>();
    s.spectrum_occupation = doc.at("spectrum_occupation").get<double>();
    return s;
  } catch (const nlohmann::json::exception& ex) {
    throw DataError(std::string("provision summary: ") + ex.what());
  }
}

void save_lightpaths(const LightpathSet& set, const ProvisionSummary& summary,
                     const Topology& topology,
                     const std::filesystem::path& csv,
                     const std::string& config_hash) {
  write_text(csv, lightpaths_csv(set, topology, config_hash));
  write_json(sidecar(csv), provision_summary_json(summary, config_hash));
}

LightpathSet load_lightpaths(const std::filesystem::path& csv,
                             const Topology& topology) {
  const std::string text = read_text(csv);
  LightpathSet set;
  for (const auto& row :
       csv_rows(text,
                "lp_id,add_node,drop_node,route,rate_gbps,channel,carried_gbps",
                7, csv.string())) {
    Lightpath lp;
    lp.id = parse_number<std::size_t>(row[0], "lightpath id");
    lp.add_node = topology.node_index(row[1]);
    lp.drop_node = topology.node_index(row[2]);
    lp.route = topology.parse_route_label(row[3]);
    lp.rate_gbps = parse_number<int>(row[4], "rate");
    lp.channel = parse_number<int>(row[5], "channel");
    lp.carried_gbps = parse_number<int>(row[6], "carried traffic");
    if (lp.route.empty() || topology.link(lp.route.front()).src != lp.add_node ||
        topology.link(lp.route.back()).dst != lp.drop_node) {
      throw DataError(csv.string() + ": lightpath " + std::to_string(lp.id) +
                      " endpoints do not match its route");
    }
    if (lp.carried_gbps < 0 || lp.carried_gbps > lp.rate_gbps ||
        lp.channel < 0) {
      throw DataError(csv.string() + ": lightpath " + std::to_string(lp.id) +
                      " has inconsistent rate, load or channel");
    }
    set.lightpaths.push_back(std::move(lp));
  }
  return set;
}

ProvisionSummary load_provision_summary(const std::filesystem::path& csv) {
  return provision_summary_from_json(read_json(sidecar(csv)));
}

std::string group_label(const CoverInstance& instance, std::size_t group) {
  const auto& links = instance.group(group).links;
  std::string chained;
  std::string joined;
  bool chains = true;
  std::string tail;
  for (std::size_t i = 0; i < links.size(); ++i) {
    const std::string label = instance.link_label(links[i]);
    joined += (i ? "+" : "") + label;
    const auto gt = label.find('>');
    if (gt == std::string::npos || label.find('>', gt + 1) != std::string::npos) {
      chains = false;
      continue;
    }
    const std::string head = label.substr(0, gt);
    if (i == 0) {
      chained = head;
    } else if (head != tail) {
      chains = false;
    }
    tail = label.substr(gt + 1);
    chained += ">" + tail;
  }
  return chains ? chained : joined;
}

Json instance_to_json(const CoverInstance& instance,
                      const std::string& config_hash) {
  Json doc;
  doc["gamma"] = instance.gamma();
  doc["alpha"] = instance.alpha();
  Json links = Json::array();
  for (std::size_t e = 0; e < instance.link_count(); ++e) {
    links.push_back(instance.link_label(e));
  }
  doc["links"] = std::move(links);
  Json groups = Json::array();
  for (std::size_t l = 0; l < instance.group_count(); ++l) {
    Json g;
    g["route"] = group_label(instance, l);
    g["links"] = instance.group(l).links;
    g["count"] = instance.group(l).count;
    groups.push_back(std::move(g));
  }
  doc["groups"] = std::move(groups);
  stamp(doc, config_hash);
  return doc;
}

CoverInstance instance_from_json(const Json& doc) {
  try {
    auto labels = doc.at("links").get<std::vector<std::string>>();
    std::vector<PathGroup> groups;
    for (const Json& g : doc.at("groups")) {
      PathGroup group;
      group.links = g.at("links").get<Route>();
      group.count = g.at("count").get<int>();
      for (LinkIndex e : group.links) {
        if (e >= labels.size()) {
          throw DataError("instance group references unknown link " +
                          std::to_string(e));
        }
      }
      groups.push_back(std::move(group));
    }
    const std::size_t link_count = labels.size();
    return CoverInstance(link_count, std::move(groups),
                         doc.at("gamma").get<int>(), doc.at("alpha").get<int>(),
                         std::move(labels));
  } catch (const nlohmann::json::exception& ex) {
    throw DataError(std::string("instance: ") + ex.what());
  }
}

Json solution_to_json(const CoverInstance& instance,
                      const PlacementSolution& solution,
                      const std::string& config_hash) {
  Json doc;
  Json p = Json::object();
  for (std::size_t l = 0; l < instance.group_count(); ++l) {
    p[group_label(instance, l)] = solution.p(static_cast<Eigen::Index>(l));
  }
  Json x = Json::object();
  for (std::size_t e = 0; e < instance.link_count(); ++e) {
    x[instance.link_label(e)] = solution.x(static_cast<Eigen::Index>(e));
  }
  doc["p"] = std::move(p);
  doc["x"] = std::move(x);
  doc["unsatisfied"] = solution.unsatisfied;
  doc["monitors"] = solution.total_monitors;
  doc["objective"] = solution.objective;
  doc["optimal"] = solution.optimal;
  stamp(doc, config_hash);
  return doc;
}

PlacementSolution solution_from_json(const CoverInstance& instance,
                                     const Json& doc) {
  try {
    const Json& p = doc.at("p");
    Eigen::VectorXi counts(static_cast<Eigen::Index>(instance.group_count()));
    for (std::size_t l = 0; l < instance.group_count(); ++l) {
      counts(static_cast<Eigen::Index>(l)) =
          p.at(group_label(instance, l)).get<int>();
    }
    return evaluate(instance, std::move(counts),
                    doc.value("optimal", false));
  } catch (const nlohmann::json::exception& ex) {
    throw DataError(std::string("solution: ") + ex.what());
  }
}

Json otdr_to_json(const Topology& topology, const OtdrPlan& plan,
                  const std::string& config_hash) {
  Json doc;
  Json nodes = Json::object();
  for (std::size_t n = 0; n < topology.node_count(); ++n) {
    nodes[topology.node_name(n)] = plan.per_node[n];
  }
  Json links = Json::object();
  const auto edges = topology.undirected_edges();
  for (std::size_t u = 0; u < edges.size(); ++u) {
    if (!plan.lit[u]) continue;
    links[topology.node_name(edges[u].a) + "-" + topology.node_name(edges[u].b)] =
        plan.per_link_inline[u];
  }
  doc["per_node"] = std::move(nodes);
  doc["per_link"] = std::move(links);
  doc["lit_links"] = std::count(plan.lit.begin(), plan.lit.end(), true);
  doc["total"] = plan.total;
  stamp(doc, config_hash);
  return doc;
}

}  // namespace ppmplan
