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

#ifndef PPMPLAN_ANALYSIS_HPP_
#define PPMPLAN_ANALYSIS_HPP_

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ppmplan/provisioning.hpp"

namespace ppmplan {

// Normalized unit figures; PPM cost is swept as a fraction of a
// transponder's.
struct CostModel {
  double transponder_cost = 4.0;
  double transponder_power = 8.0;
  double otdr_cost = 0.2;
  double otdr_power = 0.25;

  void validate() const;
};

enum class Dimension { cost, power };
std::string_view to_string(Dimension d);

enum class NplMode {
  optimized,    // mean of gamma - min(gamma, x_e)
  unoptimized,  // share of links with no monitored lightpath
};

double unsatisfied_npl_avg(std::span<const int> per_link, int gamma,
                           NplMode mode);

// PPM unit price, in percent of a transponder's, at which n_ppm PPMs cost
// as much as n_otdr OTDRs.
double crossing_value(double n_ppm, double n_otdr, const CostModel& model,
                      Dimension dimension);

// "Op", "Tr" (one PPM per lightpath), "Op-O-<gamma>", "Tr-O-<gamma>"
// (optimized placement) or "OTDR".
struct Scenario {
  enum class Kind { unoptimized, optimized, otdr };
  Kind kind = Kind::unoptimized;
  Architecture architecture = Architecture::opaque;
  int gamma = 1;

  std::string label() const;
};
Scenario parse_scenario(std::string_view label);

struct ScenarioResult {
  std::string label;
  Architecture architecture = Architecture::opaque;
  double monitor_count = 0.0;
  double carried_tbps = 0.0;
  double unsatisfied_npl_avg = 0.0;
  std::optional<double> crossing_cost_pct;
  std::optional<double> crossing_power_pct;
};

// Fills crossing values of PPM rows from the OTDR row of the same
// architecture. Rows with no monitors keep them empty.
void attach_crossings(std::vector<ScenarioResult>& results,
                      const CostModel& model);

struct CurvePoint {
  std::string scenario;
  double fraction_pct = 0.0;
  double cost_per_tbps = 0.0;
};

// Monitoring expenditure per Tb/s of the architecture's own carried
// traffic. OTDR rows become flat reference lines named "OTDR-Op"/"OTDR-Tr".
std::vector<CurvePoint> sweep_cost_curves(
    std::span<const ScenarioResult> results, const CostModel& model,
    std::span<const double> fractions, Dimension dimension);

}  // namespace ppmplan

#endif  // PPMPLAN_ANALYSIS_HPP_
