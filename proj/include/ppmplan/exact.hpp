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

#ifndef PPMPLAN_EXACT_HPP_
#define PPMPLAN_EXACT_HPP_

#include <cstddef>

#include "ppmplan/cover_instance.hpp"

namespace ppmplan {

enum class ObjectiveMode {
  // Minimize unsatisfied NPL, then monitors among those optima.
  lexicographic,
  // Minimize alpha * unsatisfied + monitors directly.
  weighted,
};

struct ExactOptions {
  ObjectiveMode mode = ObjectiveMode::lexicographic;
  // Branch-and-bound nodes across all independent components. When it runs
  // out the best incumbent is returned with optimal == false.
  std::size_t node_budget = 500000;
};

// LP-based branch-and-bound over integer p. Before branching the instance
// is reduced (p_l <= min(c_l, gamma); links whose demand can only be met by
// monitoring every usable lightpath fix those groups) and split into
// independent components sharing no link.
PlacementSolution solve_exact(const CoverInstance& instance,
                              const ExactOptions& options = {});

}  // namespace ppmplan

#endif  // PPMPLAN_EXACT_HPP_
