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

#include "ppmplan/oracle.hpp"

#include <algorithm>
#include <string>
#include <vector>

#include "ppmplan/error.hpp"

namespace ppmplan {

PlacementSolution brute_force_oracle(const CoverInstance& instance,
                                     ObjectiveMode mode, std::uint64_t cap) {
  const auto& groups = instance.groups();
  const std::size_t n = groups.size();
  const std::size_t links = instance.link_count();
  const long long gamma = instance.gamma();
  const long long alpha = instance.alpha();

  std::uint64_t space = 1;
  for (const PathGroup& g : groups) {
    const auto radix = static_cast<std::uint64_t>(g.count) + 1;
    if (space > cap / radix) {
      throw OracleCapExceeded("oracle: search space exceeds cap of " +
                              std::to_string(cap));
    }
    space *= radix;
  }

  std::vector<int> p(n, 0);
  std::vector<int> cov(links, 0);
  std::vector<int> best_p = p;
  long long best_unsat = -1;
  long long best_monitors = 0;

  auto better = [&](long long unsat, long long monitors) {
    if (best_unsat < 0) return true;
    if (mode == ObjectiveMode::weighted) {
      return alpha * unsat + monitors < alpha * best_unsat + best_monitors;
    }
    return unsat < best_unsat ||
           (unsat == best_unsat && monitors < best_monitors);
  };

  long long monitors = 0;
  while (true) {
    long long unsat = 0;
    for (std::size_t e = 0; e < links; ++e) {
      unsat += gamma - std::min<long long>(gamma, cov[e]);
    }
    if (better(unsat, monitors)) {
      best_unsat = unsat;
      best_monitors = monitors;
      best_p = p;
    }
    // Odometer step.
    std::size_t l = 0;
    while (l < n && p[l] == groups[l].count) {
      for (LinkIndex e : groups[l].links) cov[e] -= p[l];
      monitors -= p[l];
      p[l] = 0;
      ++l;
    }
    if (l == n) break;
    ++p[l];
    ++monitors;
    for (LinkIndex e : groups[l].links) ++cov[e];
  }

  PlacementSolution s;
  s.p = Eigen::VectorXi::Zero(static_cast<Eigen::Index>(n));
  s.x = Eigen::VectorXi::Zero(static_cast<Eigen::Index>(links));
  std::vector<int> final_cov(links, 0);
  for (std::size_t l = 0; l < n; ++l) {
    s.p(static_cast<Eigen::Index>(l)) = best_p[l];
    for (LinkIndex e : groups[l].links) final_cov[e] += best_p[l];
  }
  for (std::size_t e = 0; e < links; ++e) {
    s.x(static_cast<Eigen::Index>(e)) =
        static_cast<int>(std::min<long long>(gamma, final_cov[e]));
  }
  s.total_monitors = static_cast<int>(best_monitors);
  s.unsatisfied = static_cast<int>(best_unsat);
  s.objective = alpha * best_unsat + best_monitors;
  s.optimal = true;
  s.nodes = static_cast<std::size_t>(space);
  return s;
}

}  // namespace ppmplan
