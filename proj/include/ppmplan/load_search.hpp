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

#ifndef PPMPLAN_LOAD_SEARCH_HPP_
#define PPMPLAN_LOAD_SEARCH_HPP_

#include <cstdint>
#include <vector>

#include "ppmplan/provisioning.hpp"
#include "ppmplan/traffic.hpp"

namespace ppmplan {

struct LoadSearchOptions {
  double target_rejection = 0.01;
  std::size_t step = 10;
  std::size_t demand_cap = 200000;
  std::vector<int> rates{kDefaultRatesGbps.begin(), kDefaultRatesGbps.end()};
  // The architecture field is ignored: the search always provisions
  // transparently.
  ProvisioningOptions provisioning;
};

struct LoadSearchResult {
  DemandSet demands;
  LightpathSet transparent;
  double carried_tbps = 0.0;
  double rejection = 0.0;
  double spectrum_occupation = 0.0;
};

// Grows the demand set `step` demands at a time, provisioning under the
// transparent architecture, until the rejected fraction reaches the target.
// Throws SaturationError if the demand cap is hit first.
LoadSearchResult find_load_at_rejection(const Topology& topology,
                                        std::uint64_t seed,
                                        const LoadSearchOptions& options);

}  // namespace ppmplan

#endif  // PPMPLAN_LOAD_SEARCH_HPP_
