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

#ifndef PPMPLAN_COVER_INSTANCE_HPP_
#define PPMPLAN_COVER_INSTANCE_HPP_

#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "ppmplan/provisioning.hpp"
#include "ppmplan/topology.hpp"

namespace ppmplan {

// A physical route shared by `count` lightpaths.
struct PathGroup {
  Route links;
  int count = 0;

  std::size_t hops() const { return links.size(); }
};

enum class AlphaPolicy {
  hop_bound,         // alpha = max hops + 1
  strict_dominance,  // alpha = max(1 + sum of counts, max hops + 1)
};

// Monitoring-placement input: links E, path groups L with multiplicities
// c_l, required NPL gamma and unsatisfied-NPL weight alpha. The coverage
// matrix delta is |E| x |L| with delta(e, l) = 1 iff route l uses link e.
class CoverInstance {
 public:
  CoverInstance(std::size_t link_count, std::vector<PathGroup> groups,
                int gamma, AlphaPolicy policy = AlphaPolicy::hop_bound,
                std::vector<std::string> link_labels = {});
  // Explicit alpha; must exceed the longest route's hop count.
  CoverInstance(std::size_t link_count, std::vector<PathGroup> groups,
                int gamma, int alpha, std::vector<std::string> link_labels = {});

  std::size_t link_count() const { return link_count_; }
  std::size_t group_count() const { return groups_.size(); }
  const std::vector<PathGroup>& groups() const { return groups_; }
  const PathGroup& group(std::size_t l) const { return groups_.at(l); }
  int gamma() const { return gamma_; }
  int alpha() const { return alpha_; }
  int max_hops() const { return max_hops_; }
  long long total_count() const;

  const Eigen::VectorXi& counts() const { return counts_; }
  const Eigen::SparseMatrix<int>& delta() const { return delta_; }
  // Groups using each link, ascending.
  const std::vector<std::vector<std::size_t>>& groups_on_link() const {
    return groups_on_link_;
  }

  std::string link_label(std::size_t e) const;
  const std::vector<std::string>& link_labels() const { return labels_; }

  static int alpha_for(AlphaPolicy policy,
                       const std::vector<PathGroup>& groups);

 private:
  void init(std::vector<std::string> labels);

  std::size_t link_count_;
  std::vector<PathGroup> groups_;
  int gamma_;
  int alpha_;
  int max_hops_ = 0;
  Eigen::VectorXi counts_;
  Eigen::SparseMatrix<int> delta_;
  std::vector<std::vector<std::size_t>> groups_on_link_;
  std::vector<std::string> labels_;
};

// Groups lightpaths by identical ordered route (first appearance order);
// c_l is the group size. Links are the topology's directed links.
CoverInstance build_cover_instance(const LightpathSet& lightpaths,
                                   const Topology& topology, int gamma,
                                   AlphaPolicy policy = AlphaPolicy::hop_bound);

struct PlacementSolution {
  Eigen::VectorXi p;  // monitors per group
  Eigen::VectorXi x;  // achieved NPL per link, capped at gamma
  int total_monitors = 0;
  int unsatisfied = 0;
  long long objective = 0;  // alpha * unsatisfied + total_monitors
  bool optimal = false;
  std::size_t nodes = 0;  // branch-and-bound nodes, when applicable
};

// delta * p.
Eigen::VectorXi coverage(const CoverInstance& instance,
                         const Eigen::VectorXi& p);

// Completes a solution from p: x = min(gamma, delta * p) and the objective
// terms. Throws DataError if p violates 0 <= p <= c.
PlacementSolution evaluate(const CoverInstance& instance, Eigen::VectorXi p,
                           bool optimal = false);

// Smallest achievable unsatisfied NPL: every lightpath monitored.
int min_unsatisfied(const CoverInstance& instance);

}  // namespace ppmplan

#endif  // PPMPLAN_COVER_INSTANCE_HPP_
