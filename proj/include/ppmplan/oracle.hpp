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

#ifndef PPMPLAN_ORACLE_HPP_
#define PPMPLAN_ORACLE_HPP_

#include <cstdint>

#include "ppmplan/cover_instance.hpp"
#include "ppmplan/exact.hpp"

namespace ppmplan {

// Exhaustive enumeration of every p with 0 <= p_l <= c_l. Throws
// OracleCapExceeded when prod (c_l + 1) exceeds `cap`. Deliberately shares
// no code with the other solvers.
PlacementSolution brute_force_oracle(
    const CoverInstance& instance,
    ObjectiveMode mode = ObjectiveMode::lexicographic,
    std::uint64_t cap = 1000000);

}  // namespace ppmplan

#endif  // PPMPLAN_ORACLE_HPP_
