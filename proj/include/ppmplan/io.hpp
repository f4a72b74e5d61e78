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

#ifndef PPMPLAN_IO_HPP_
#define PPMPLAN_IO_HPP_

#include <filesystem>
#include <string>

#include "json.hpp"
#include "ppmplan/cover_instance.hpp"
#include "ppmplan/otdr.hpp"
#include "ppmplan/provisioning.hpp"
#include "ppmplan/topology.hpp"
#include "ppmplan/traffic.hpp"

namespace ppmplan {

using Json = nlohmann::ordered_json;

// CSV writers put "# config_hash=<hash>" on the first line when a hash is
// given; readers skip lines starting with '#'. JSON documents carry the
// hash as a "config_hash" member instead.

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);
Json read_json(const std::filesystem::path& path);
void write_json(const std::filesystem::path& path, const Json& doc);

// src,dst,rate_gbps. The seed goes to a sidecar next to the CSV with the
// extension replaced by ".json".
std::string demands_csv(const DemandSet& demands, const Topology& topology,
                        const std::string& config_hash = {});
void save_demands(const DemandSet& demands, const Topology& topology,
                  const std::filesystem::path& csv,
                  const std::string& config_hash = {});
DemandSet load_demands(const std::filesystem::path& csv,
                       const Topology& topology);

// lp_id,add_node,drop_node,route,rate_gbps,channel,carried_gbps with routes
// written as "A>B>C".
std::string lightpaths_csv(const LightpathSet& set, const Topology& topology,
                           const std::string& config_hash = {});

// What the lightpath dump alone cannot tell: accepted and carried traffic.
struct ProvisionSummary {
  Architecture architecture = Architecture::transparent;
  std::size_t lightpaths = 0;
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  double carried_tbps = 0.0;
  double spectrum_occupation = 0.0;
};
Json provision_summary_json(const ProvisionSummary& summary,
                            const std::string& config_hash = {});
ProvisionSummary provision_summary_from_json(const Json& doc);

// Writes the CSV and its summary sidecar (extension ".json").
void save_lightpaths(const LightpathSet& set, const ProvisionSummary& summary,
                     const Topology& topology,
                     const std::filesystem::path& csv,
                     const std::string& config_hash = {});
// Lightpaths only; accepted/rejected lists are not part of the dump.
LightpathSet load_lightpaths(const std::filesystem::path& csv,
                             const Topology& topology);
ProvisionSummary load_provision_summary(const std::filesystem::path& csv);

// "A>B>C" when link labels chain, otherwise labels joined by '+'.
std::string group_label(const CoverInstance& instance, std::size_t group);

Json instance_to_json(const CoverInstance& instance,
                      const std::string& config_hash = {});
CoverInstance instance_from_json(const Json& doc);

Json solution_to_json(const CoverInstance& instance,
                      const PlacementSolution& solution,
                      const std::string& config_hash = {});
// Rebuilds a solution from its "p" member and re-evaluates it.
PlacementSolution solution_from_json(const CoverInstance& instance,
                                     const Json& doc);

Json otdr_to_json(const Topology& topology, const OtdrPlan& plan,
                  const std::string& config_hash = {});

}  // namespace ppmplan

#endif  // PPMPLAN_IO_HPP_
