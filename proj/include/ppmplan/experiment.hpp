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

#ifndef PPMPLAN_EXPERIMENT_HPP_
#define PPMPLAN_EXPERIMENT_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "ppmplan/analysis.hpp"
#include "ppmplan/exact.hpp"
#include "ppmplan/greedy.hpp"
#include "ppmplan/topology.hpp"

namespace ppmplan {

enum class ExperimentMode {
  rejection,  // one load per seed: the first reaching the target rejection
  sweep,      // fixed demand counts per seed
  compare,    // greedy against exact on the transparent instance
};

enum class SolverKind { greedy, exact };

struct TopologySource {
  std::optional<std::string> dataset;          // bundled name
  std::optional<std::filesystem::path> file;   // topology JSON
  std::size_t gabriel_nodes = 0;               // used when both are empty
  std::uint64_t gabriel_seed = 1;
  double extent_km = kDefaultExtentKm;
  std::optional<double> span_length_km;

  Topology load() const;
};

struct ExperimentConfig {
  TopologySource topology;
  std::vector<std::string> scenarios{"Op",     "Tr",     "Op-O-1", "Tr-O-1",
                                     "Op-O-3", "Tr-O-3", "OTDR"};
  std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  ExperimentMode mode = ExperimentMode::rejection;
  double target_rejection = 0.01;
  std::size_t step = 10;
  std::size_t demand_cap = 200000;
  std::vector<std::size_t> loads;  // demand counts, sweep mode
  std::vector<int> gammas{1};      // compare mode
  std::vector<int> rates{100, 200, 300, 400};
  SolverKind solver = SolverKind::exact;
  std::size_t node_budget = 500000;
  TieBreak tie_break = TieBreak::deterministic;
  int k_paths = 3;
  int channels = 60;
  std::optional<int> max_hops;
  CostModel cost_model;
  std::vector<double> fractions;  // percent; default 0, 1, ..., 100
  std::filesystem::path output_dir = "results";
  bool record_timing = false;
  unsigned threads = 0;  // 0: hardware concurrency

  void validate() const;
};

// Missing members take the defaults above. When "solver" is absent it is
// greedy for generated topologies of 100 nodes or more, exact otherwise.
ExperimentConfig config_from_json(const nlohmann::json& doc);
// Every member that can influence results; the output directory and thread
// count are left out.
nlohmann::json config_to_json(const ExperimentConfig& config);
ExperimentConfig load_config(const std::filesystem::path& path);

// SHA-256 of the compact canonical form of config_to_json.
std::string config_hash(const ExperimentConfig& config);

struct ExperimentReport {
  std::string config_hash;
  std::vector<std::filesystem::path> files;  // written, sorted
  std::vector<std::string> failures;         // "seed <s>: <what>"
  bool budget_exceeded = false;              // some exact solve stopped early
  std::vector<ScenarioResult> scenarios;     // rejection mode means
};

ExperimentReport run_experiment(const ExperimentConfig& config);

}  // namespace ppmplan

#endif  // PPMPLAN_EXPERIMENT_HPP_
