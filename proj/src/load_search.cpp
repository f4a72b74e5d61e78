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

#include "ppmplan/load_search.hpp"

#include <string>

#include "ppmplan/error.hpp"

namespace ppmplan {

LoadSearchResult find_load_at_rejection(const Topology& topology,
                                        std::uint64_t seed,
                                        const LoadSearchOptions& options) {
  if (!(options.target_rejection > 0.0 && options.target_rejection < 1.0)) {
    throw DataError("target rejection must lie strictly between 0 and 1");
  }
  if (options.step == 0) throw DataError("load step must be positive");
  ProvisioningOptions prov = options.provisioning;
  prov.architecture = Architecture::transparent;
  Provisioner provisioner(topology, prov);
  DemandGenerator generator(topology.node_count(), seed, options.rates);

  LoadSearchResult result;
  result.demands.seed = seed;
  while (result.demands.demands.size() < options.demand_cap) {
    for (std::size_t i = 0;
         i < options.step && result.demands.demands.size() < options.demand_cap;
         ++i) {
      const Demand d = generator.next();
      result.demands.demands.push_back(d);
      provisioner.offer(d);
    }
    if (provisioner.result().rejection_fraction() >= options.target_rejection) {
      result.transparent = provisioner.result();
      result.carried_tbps = result.transparent.carried_tbps();
      result.rejection = result.transparent.rejection_fraction();
      result.spectrum_occupation = provisioner.spectrum_occupation();
      return result;
    }
  }
  throw SaturationError("rejection " +
                        std::to_string(provisioner.result().rejection_fraction()) +
                        " still below target after " +
                        std::to_string(options.demand_cap) + " demands");
}

}  // namespace ppmplan
