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

#include "ppmplan/cover_instance.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "ppmplan/error.hpp"

namespace ppmplan {

int CoverInstance::alpha_for(AlphaPolicy policy,
                             const std::vector<PathGroup>& groups) {
  std::size_t hops = 0;
  long long total = 0;
  for (const PathGroup& g : groups) {
    hops = std::max(hops, g.hops());
    total += g.count;
  }
  const long long alpha = static_cast<long long>(hops) + 1;
  if (policy == AlphaPolicy::strict_dominance) {
    return static_cast<int>(std::max(alpha, 1 + total));
  }
  return static_cast<int>(alpha);
}

CoverInstance::CoverInstance(std::size_t link_count,
                             std::vector<PathGroup> groups, int gamma,
                             AlphaPolicy policy,
                             std::vector<std::string> link_labels)
    : link_count_(link_count),
      groups_(std::move(groups)),
      gamma_(gamma),
      alpha_(alpha_for(policy, groups_)) {
  init(std::move(link_labels));
}

CoverInstance::CoverInstance(std::size_t link_count,
                             std::vector<PathGroup> groups, int gamma,
                             int alpha, std::vector<std::string> link_labels)
    : link_count_(link_count),
      groups_(std::move(groups)),
      gamma_(gamma),
      alpha_(alpha) {
  init(std::move(link_labels));
}

void CoverInstance::init(std::vector<std::string> labels) {
  if (gamma_ < 1) throw DataError("required NPL gamma must be at least 1");
  if (!labels.empty() && labels.size() != link_count_) {
    throw DataError("link label count does not match link count");
  }
  labels_ = std::move(labels);
  counts_.resize(static_cast<Eigen::Index>(groups_.size()));
  groups_on_link_.assign(link_count_, {});
  std::vector<Eigen::Triplet<int>> entries;
  for (std::size_t l = 0; l < groups_.size(); ++l) {
    const PathGroup& g = groups_[l];
    if (g.count < 1) throw DataError("path group with non-positive count");
    if (g.links.empty()) throw DataError("path group without links");
    std::set<LinkIndex> distinct(g.links.begin(), g.links.end());
    if (distinct.size() != g.links.size()) {
      throw DataError("path group traverses a link twice");
    }
    for (LinkIndex e : g.links) {
      if (e >= link_count_) throw DataError("path group uses unknown link");
      entries.emplace_back(static_cast<int>(e), static_cast<int>(l), 1);
      groups_on_link_[e].push_back(l);
    }
    counts_(static_cast<Eigen::Index>(l)) = g.count;
    max_hops_ = std::max(max_hops_, static_cast<int>(g.hops()));
  }
  if (alpha_ <= max_hops_) {
    throw DataError("alpha must exceed the maximum hop count");
  }
  delta_.resize(static_cast<Eigen::Index>(link_count_),
                static_cast<Eigen::Index>(groups_.size()));
  delta_.setFromTriplets(entries.begin(), entries.end());
}

long long CoverInstance::total_count() const {
  return counts_.cast<long long>().sum();
}

std::string CoverInstance::link_label(std::size_t e) const {
  return labels_.empty() ? "e" + std::to_string(e) : labels_.at(e);
}

CoverInstance build_cover_instance(const LightpathSet& lightpaths,
                                   const Topology& topology, int gamma,
                                   AlphaPolicy policy) {
  std::map<Route, std::size_t> index;
  std::vector<PathGroup> groups;
  for (const Lightpath& lp : lightpaths.lightpaths) {
    auto [it, fresh] = index.emplace(lp.route, groups.size());
    if (fresh) groups.push_back({lp.route, 0});
    ++groups[it->second].count;
  }
  std::vector<std::string> labels;
  labels.reserve(topology.link_count());
  for (LinkIndex l = 0; l < topology.link_count(); ++l) {
    labels.push_back(topology.link_label(l));
  }
  return CoverInstance(topology.link_count(), std::move(groups), gamma, policy,
                       std::move(labels));
}

Eigen::VectorXi coverage(const CoverInstance& instance,
                         const Eigen::VectorXi& p) {
  return instance.delta() * p;
}

PlacementSolution evaluate(const CoverInstance& instance, Eigen::VectorXi p,
                           bool optimal) {
  if (p.size() != static_cast<Eigen::Index>(instance.group_count())) {
    throw DataError("placement vector has the wrong length");
  }
  if ((p.array() < 0).any() || (p.array() > instance.counts().array()).any()) {
    throw DataError("placement violates 0 <= p <= c");
  }
  PlacementSolution s;
  s.x = coverage(instance, p).cwiseMin(instance.gamma());
  s.p = std::move(p);
  s.total_monitors = s.p.sum();
  s.unsatisfied = static_cast<int>(instance.link_count()) * instance.gamma() -
                  s.x.sum();
  s.objective = static_cast<long long>(instance.alpha()) * s.unsatisfied +
                s.total_monitors;
  s.optimal = optimal;
  return s;
}

int min_unsatisfied(const CoverInstance& instance) {
  return evaluate(instance, instance.counts()).unsatisfied;
}

}  // namespace ppmplan
