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

#include "ppmplan/analysis.hpp"

#include <algorithm>
#include <charconv>

#include "ppmplan/error.hpp"

namespace ppmplan {
namespace {

double unit_transponder(const CostModel& m, Dimension d) {
  return d == Dimension::cost ? m.transponder_cost : m.transponder_power;
}

double unit_otdr(const CostModel& m, Dimension d) {
  return d == Dimension::cost ? m.otdr_cost : m.otdr_power;
}

std::string_view short_name(Architecture a) {
  return a == Architecture::opaque ? "Op" : "Tr";
}

}  // namespace

void CostModel::validate() const {
  if (!(transponder_cost > 0 && transponder_power > 0 && otdr_cost > 0 &&
        otdr_power > 0)) {
    throw DataError("cost model entries must be positive");
  }
}

std::string_view to_string(Dimension d) {
  return d == Dimension::cost ? "cost" : "power";
}

double unsatisfied_npl_avg(std::span<const int> per_link, int gamma,
                           NplMode mode) {
  if (gamma < 1) throw DataError("gamma must be at least 1");
  if (per_link.empty()) return 0.0;
  double sum = 0.0;
  for (int v : per_link) {
    if (mode == NplMode::optimized) {
      sum += gamma - std::min(gamma, std::max(v, 0));
    } else {
      sum += v <= 0 ? 1.0 : 0.0;
    }
  }
  return sum / static_cast<double>(per_link.size());
}

double crossing_value(double n_ppm, double n_otdr, const CostModel& model,
                      Dimension dimension) {
  model.validate();
  if (!(n_ppm > 0)) throw DataError("crossing value needs n_ppm > 0");
  if (n_otdr < 0) throw DataError("negative OTDR count");
  return 100.0 * n_otdr * unit_otdr(model, dimension) /
         (n_ppm * unit_transponder(model, dimension));
}

std::string Scenario::label() const {
  switch (kind) {
    case Kind::otdr:
      return "OTDR";
    case Kind::unoptimized:
      return std::string(short_name(architecture));
    case Kind::optimized:
      break;
  }
  return std::string(short_name(architecture)) + "-O-" +
         std::to_string(gamma);
}

Scenario parse_scenario(std::string_view label) {
  Scenario s;
  if (label == "OTDR") {
    s.kind = Scenario::Kind::otdr;
    return s;
  }
  const auto arch = label.substr(0, 2);
  if (arch != "Op" && arch != "Tr") {
    throw DataError("unknown scenario '" + std::string(label) + "'");
  }
  s.architecture = parse_architecture(arch);
  if (label.size() == 2) return s;
  const auto rest = label.substr(2);
  if (rest.substr(0, 3) != "-O-" || rest.size() == 3) {
    throw DataError("unknown scenario '" + std::string(label) + "'");
  }
  const auto digits = rest.substr(3);
  int gamma = 0;
  const auto [end, ec] =
      std::from_chars(digits.data(), digits.data() + digits.size(), gamma);
  if (ec != std::errc{} || end != digits.data() + digits.size() || gamma < 1) {
    throw DataError("bad gamma in scenario '" + std::string(label) + "'");
  }
  s.kind = Scenario::Kind::optimized;
  s.gamma = gamma;
  return s;
}

void attach_crossings(std::vector<ScenarioResult>& results,
                      const CostModel& model) {
  for (ScenarioResult& r : results) {
    if (r.label == "OTDR" || r.monitor_count <= 0) continue;
    const auto otdr = std::find_if(
        results.begin(), results.end(), [&](const ScenarioResult& o) {
          return o.label == "OTDR" && o.architecture == r.architecture;
        });
    if (otdr == results.end()) continue;
    r.crossing_cost_pct = crossing_value(r.monitor_count, otdr->monitor_count,
                                         model, Dimension::cost);
    r.crossing_power_pct = crossing_value(
        r.monitor_count, otdr->monitor_count, model, Dimension::power);
  }
}

std::vector<CurvePoint> sweep_cost_curves(
    std::span<const ScenarioResult> results, const CostModel& model,
    std::span<const double> fractions, Dimension dimension) {
  model.validate();
  if (fractions.empty()) throw DataError("empty fraction list");
  std::vector<CurvePoint> curve;
  for (const ScenarioResult& r : results) {
    if (!(r.carried_tbps > 0)) {
      throw DataError("scenario " + r.label + " carries no traffic");
    }
    const bool otdr = r.label == "OTDR";
    const std::string name =
        otdr ? "OTDR-" + std::string(short_name(r.architecture)) : r.label;
    for (double f : fractions) {
      const double unit = otdr ? unit_otdr(model, dimension)
                               : f / 100.0 * unit_transponder(model, dimension);
      curve.push_back({name, f, r.monitor_count * unit / r.carried_tbps});
    }
  }
  return curve;
}

}  // namespace ppmplan
