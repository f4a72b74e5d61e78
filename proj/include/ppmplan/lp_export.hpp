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

#ifndef PPMPLAN_LP_EXPORT_HPP_
#define PPMPLAN_LP_EXPORT_HPP_

#include <ostream>
#include <string>

#include "ppmplan/cover_instance.hpp"

namespace ppmplan {

// Writes the placement model in CPLEX LP format. Variables are p<l> for
// path groups and x<e> for links; the constant alpha * gamma * |E| of the
// objective is dropped and stated in the header comment.
void write_lp(const CoverInstance& instance, std::ostream& out);
std::string lp_text(const CoverInstance& instance);
void export_lp(const CoverInstance& instance, const std::string& path);

}  // namespace ppmplan

#endif  // PPMPLAN_LP_EXPORT_HPP_
