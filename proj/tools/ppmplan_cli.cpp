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

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "ppmplan/analysis.hpp"
#include "ppmplan/cover_instance.hpp"
#include "ppmplan/error.hpp"
#include "ppmplan/exact.hpp"
#include "ppmplan/experiment.hpp"
#include "ppmplan/greedy.hpp"
#include "ppmplan/io.hpp"
#include "ppmplan/lp_export.hpp"
#include "ppmplan/oracle.hpp"
#include "ppmplan/otdr.hpp"
#include "ppmplan/provisioning.hpp"
#include "ppmplan/topology.hpp"
#include "ppmplan/traffic.hpp"
#include "ppmplan/version.hpp"

namespace fs = std::filesystem;
using namespace ppmplan;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitBudget = 3;

// A topology argument is either a bundled dataset name or a file.
Topology open_topology(const std::string& arg, std::optional<double> span) {
  if (arg == "n14" || arg == "j14") return load_topology(bundled_dataset(arg), span);
  return load_topology(arg, span);
}

void emit(const std::string& out, const std::string& text) {
  if (out.empty() || out == "-") {
    std::cout << text;
  } else {
    write_text(out, text);
  }
}

void emit(const std::string& out, const Json& doc) { emit(out, doc.dump(2) + "\n"); }

struct Common {
  std::string topology;
  std::optional<double> span;
  std::string out;
};

void add_topology(CLI::App* cmd, Common& c, bool required = true) {
  auto* opt = cmd->add_option("--topology,-t", c.topology,
                              "topology JSON, or n14 / j14");
  if (required) opt->required();
  cmd->add_option("--span-km", c.span, "span length override");
}

CoverInstance instance_from_args(const Common& c, const std::string& instance,
                                 const std::string& lightpaths,
                                 std::optional<int> gamma) {
  if (!instance.empty()) {
    CoverInstance inst = instance_from_json(read_json(instance));
    if (!gamma || *gamma == inst.gamma()) return inst;
    return CoverInstance(inst.link_count(), inst.groups(), *gamma,
                         AlphaPolicy::hop_bound, inst.link_labels());
  }
  if (lightpaths.empty() || c.topology.empty()) {
    throw CLI::ValidationError(
        "need --instance, or --topology with --lightpaths");
  }
  const Topology topo = open_topology(c.topology, c.span);
  return build_cover_instance(load_lightpaths(lightpaths, topo), topo,
                              gamma.value_or(1));
}

bool single_hop(const CoverInstance& instance) {
  for (const PathGroup& g : instance.groups()) {
    if (g.hops() != 1) return false;
  }
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monitoring placement planner for optical networks", "ppmplan"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  Common common;
  int status = kExitOk;

  // topo gen | validate
  auto* topo = app.add_subcommand("topo", "generate or check topologies");
  topo->require_subcommand(1);
  std::size_t gen_nodes = 0;
  std::uint64_t seed = 1;
  double extent = kDefaultExtentKm;
  auto* gen = topo->add_subcommand("gen", "Gabriel graph topology");
  gen->add_option("--nodes,-n", gen_nodes, "node count")->required()->check(CLI::Range(2, 1000000));
  gen->add_option("--seed", seed, "RNG seed");
  gen->add_option("--extent-km", extent, "side of the square")->check(CLI::PositiveNumber);
  gen->add_option("--span-km", common.span, "span length");
  gen->add_option("--out,-o", common.out, "output file (default stdout)");
  gen->callback([&] {
    const Topology t = generate_gabriel(gen_nodes, seed, extent,
                                        common.span.value_or(kDefaultSpanLengthKm));
    emit(common.out, Json::parse(topology_to_json(t).dump()));
  });

  std::string validate_path;
  auto* validate = topo->add_subcommand("validate", "load and summarize a topology");
  validate->add_option("file", validate_path, "topology JSON, or n14 / j14")->required();
  validate->add_option("--span-km", common.span, "span length override");
  validate->callback([&] {
    const Topology t = open_topology(validate_path, common.span);
    int degree_sum = 0;
    for (std::size_t n = 0; n < t.node_count(); ++n) degree_sum += node_degree(t, n);
    Json doc;
    doc["name"] = t.name();
    doc["nodes"] = t.node_count();
    doc["directed_links"] = t.link_count();
    doc["undirected_links"] = t.undirected_count();
    doc["degree_sum"] = degree_sum;
    doc["span_length_km"] = t.span_length_km();
    emit("", doc);
  });

  // demands
  std::size_t count = 0;
  auto* demands = app.add_subcommand("demands", "random demand set");
  add_topology(demands, common);
  demands->add_option("--count,-n", count, "number of demands")->required()->check(CLI::PositiveNumber);
  demands->add_option("--seed", seed, "RNG seed");
  demands->add_option("--out,-o", common.out, "CSV path (seed sidecar next to it)")->required();
  demands->callback([&] {
    const Topology t = open_topology(common.topology, common.span);
    save_demands(generate_demands(t, count, seed), t, common.out);
  });

  // provision
  std::string demands_path;
  std::string arch_name = "transparent";
  int k_paths = 3;
  int channels = 60;
  std::optional<int> max_hops;
  auto* prov = app.add_subcommand("provision", "establish lightpaths");
  add_topology(prov, common);
  prov->add_option("--demands,-d", demands_path, "demand CSV")->required();
  prov->add_option("--arch", arch_name, "opaque or transparent");
  prov->add_option("--k", k_paths, "candidate routes")->check(CLI::PositiveNumber);
  prov->add_option("--channels", channels, "channels per fibre")->check(CLI::Range(1, 64));
  prov->add_option("--max-hops", max_hops, "links per lightpath cap")->check(CLI::PositiveNumber);
  prov->add_option("--out,-o", common.out, "lightpath CSV (summary next to it)")->required();
  prov->callback([&] {
    const Topology t = open_topology(common.topology, common.span);
    const DemandSet d = load_demands(demands_path, t);
    ProvisioningOptions o;
    o.architecture = parse_architecture(arch_name);
    o.k_paths = k_paths;
    o.channels = channels;
    o.max_hops = max_hops;
    Provisioner p(t, o);
    for (const Demand& demand : d.demands) p.offer(demand);
    ProvisionSummary s;
    s.architecture = o.architecture;
    s.lightpaths = p.result().lightpaths.size();
    s.accepted = p.result().accepted.size();
    s.rejected = p.result().rejected.size();
    s.carried_tbps = p.result().carried_tbps();
    s.spectrum_occupation = p.spectrum_occupation();
    save_lightpaths(p.result(), s, t, common.out);
  });

  // place
  std::string instance_path;
  std::string lightpaths_path;
  std::string dump_instance;
  std::string solver = "exact";
  std::optional<int> gamma;
  std::optional<std::string> place_arch;
  std::size_t node_budget = 500000;
  bool weighted = false;
  bool random_ties = false;
  auto* place = app.add_subcommand("place", "choose monitored lightpaths");
  add_topology(place, common, false);
  place->add_option("--instance,-i", instance_path, "instance JSON");
  place->add_option("--lightpaths,-l", lightpaths_path, "lightpath CSV");
  place->add_option("--gamma,-g", gamma, "required NPL")->check(CLI::PositiveNumber);
  place->add_option("--solver", solver, "greedy, exact or oracle")
      ->check(CLI::IsMember({"greedy", "exact", "oracle"}));
  place->add_option("--arch", place_arch, "greedy mode (default: opaque iff all routes are single hop)");
  place->add_option("--node-budget", node_budget, "branch-and-bound nodes");
  place->add_flag("--weighted", weighted, "alpha-weighted objective instead of lexicographic");
  place->add_flag("--random-ties", random_ties, "seeded random tie-breaking (greedy)");
  place->add_option("--seed", seed, "tie-break seed");
  place->add_option("--dump-instance", dump_instance, "also write the instance JSON");
  place->add_option("--out,-o", common.out, "solution JSON (default stdout)");
  place->callback([&] {
    const CoverInstance inst =
        instance_from_args(common, instance_path, lightpaths_path, gamma);
    if (!dump_instance.empty()) write_json(dump_instance, instance_to_json(inst));
    const ObjectiveMode mode =
        weighted ? ObjectiveMode::weighted : ObjectiveMode::lexicographic;
    PlacementSolution sol;
    if (solver == "greedy") {
      const Architecture arch = place_arch ? parse_architecture(*place_arch)
                                : single_hop(inst) ? Architecture::opaque
                                                   : Architecture::transparent;
      sol = solve_greedy(inst, arch,
                         {random_ties ? TieBreak::seeded_random
                                      : TieBreak::deterministic,
                          seed});
    } else if (solver == "exact") {
      sol = solve_exact(inst, {mode, node_budget});
      if (!sol.optimal) status = kExitBudget;
    } else {
      sol = brute_force_oracle(inst, mode);
    }
    emit(common.out, solution_to_json(inst, sol));
  });

  // export-lp
  auto* lp = app.add_subcommand("export-lp", "write the placement model in LP format");
  add_topology(lp, common, false);
  lp->add_option("--instance,-i", instance_path, "instance JSON");
  lp->add_option("--lightpaths,-l", lightpaths_path, "lightpath CSV");
  lp->add_option("--gamma,-g", gamma, "required NPL")->check(CLI::PositiveNumber);
  lp->add_option("--out,-o", common.out, "LP file (default stdout)");
  lp->callback([&] {
    const CoverInstance inst =
        instance_from_args(common, instance_path, lightpaths_path, gamma);
    if (common.out.empty() || common.out == "-") {
      std::cout << lp_text(inst);
    } else {
      export_lp(inst, common.out);
    }
  });

  // baseline
  auto* baseline = app.add_subcommand("baseline", "OTDR count");
  add_topology(baseline, common);
  baseline->add_option("--lightpaths,-l", lightpaths_path,
                       "count only links these lightpaths light");
  baseline->add_option("--out,-o", common.out, "OtdrPlan JSON (default stdout)");
  baseline->callback([&] {
    const Topology t = open_topology(common.topology, common.span);
    OtdrPlan plan;
    if (lightpaths_path.empty()) {
      plan = count_otdrs(t);
    } else {
      const auto lit = load_lightpaths(lightpaths_path, t).lit_links();
      plan = count_otdrs(t, lit);
    }
    emit(common.out, otdr_to_json(t, plan));
  });

  // analyze
  std::optional<double> n_ppm;
  std::optional<double> n_otdr;
  std::string solution_path;
  CostModel cost;
  auto* analyze = app.add_subcommand(
      "analyze", "crossing values from counts, or metrics of a placement");
  add_topology(analyze, common, false);
  analyze->add_option("--ppm", n_ppm, "PPM count")->check(CLI::PositiveNumber);
  analyze->add_option("--otdr", n_otdr, "OTDR count")->check(CLI::NonNegativeNumber);
  analyze->add_option("--lightpaths,-l", lightpaths_path, "lightpath CSV");
  analyze->add_option("--solution,-s", solution_path,
                      "solution JSON (omit for one PPM per lightpath)");
  analyze->add_option("--gamma,-g", gamma, "required NPL of the solution")->check(CLI::PositiveNumber);
  analyze->add_option("--transponder-cost", cost.transponder_cost)->check(CLI::PositiveNumber);
  analyze->add_option("--transponder-power", cost.transponder_power)->check(CLI::PositiveNumber);
  analyze->add_option("--otdr-cost", cost.otdr_cost)->check(CLI::PositiveNumber);
  analyze->add_option("--otdr-power", cost.otdr_power)->check(CLI::PositiveNumber);
  analyze->add_option("--out,-o", common.out, "JSON (default stdout)");
  analyze->callback([&] {
    Json doc;
    if (n_ppm || n_otdr) {
      if (!n_ppm || !n_otdr) throw CLI::ValidationError("--ppm and --otdr go together");
      doc["ppm"] = *n_ppm;
      doc["otdr"] = *n_otdr;
    } else {
      if (common.topology.empty() || lightpaths_path.empty()) {
        throw CLI::ValidationError(
            "need --ppm/--otdr, or --topology with --lightpaths");
      }
      const Topology t = open_topology(common.topology, common.span);
      const LightpathSet set = load_lightpaths(lightpaths_path, t);
      const ProvisionSummary summary = load_provision_summary(lightpaths_path);
      const auto lit = set.lit_links();
      const OtdrPlan plan = count_otdrs(t, lit);
      double monitors = 0;
      double unsat = 0;
      std::string label;
      if (solution_path.empty()) {
        std::vector<int> per_link(t.link_count(), 0);
        for (const Lightpath& p : set.lightpaths) {
          for (LinkIndex e : p.route) ++per_link[e];
        }
        monitors = static_cast<double>(set.lightpaths.size());
        unsat = unsatisfied_npl_avg(per_link, 1, NplMode::unoptimized);
        label = summary.architecture == Architecture::opaque ? "Op" : "Tr";
      } else {
        const Json sol_doc = read_json(solution_path);
        const int g = gamma.value_or(1);
        const CoverInstance inst = build_cover_instance(set, t, g);
        const PlacementSolution sol = solution_from_json(inst, sol_doc);
        monitors = sol.total_monitors;
        std::vector<int> x(sol.x.data(), sol.x.data() + sol.x.size());
        unsat = unsatisfied_npl_avg(x, g, NplMode::optimized);
        label = std::string(summary.architecture == Architecture::opaque ? "Op" : "Tr") +
                "-O-" + std::to_string(g);
      }
      doc["scenario"] = label;
      doc["monitors"] = monitors;
      doc["carried_tbps"] = summary.carried_tbps;
      doc["unsatisfied_npl_avg"] = unsat;
      doc["otdr"] = plan.total;
      n_ppm = monitors;
      n_otdr = plan.total;
    }
    if (*n_ppm > 0) {
      doc["crossing_cost_pct"] = crossing_value(*n_ppm, *n_otdr, cost, Dimension::cost);
      doc["crossing_power_pct"] = crossing_value(*n_ppm, *n_otdr, cost, Dimension::power);
    }
    emit(common.out, doc);
  });

  // run
  std::string config_path;
  std::optional<std::string> run_mode;
  std::optional<double> target;
  std::optional<std::uint64_t> run_seed;
  std::optional<std::size_t> seed_count;
  std::optional<std::string> dataset;
  auto* run = app.add_subcommand("run", "full pipeline from a config");
  run->add_option("--config,-c", config_path, "experiment config JSON");
  run->add_option("--dataset", dataset, "bundled topology when no config is given")
      ->check(CLI::IsMember({"n14", "j14"}));
  run->add_option("--mode", run_mode, "rejection, sweep or compare")
      ->check(CLI::IsMember({"rejection", "sweep", "compare"}));
  run->add_option("--target", target, "rejection target")->check(CLI::Range(0.0, 1.0));
  run->add_option("--seed", run_seed, "run this single seed");
  run->add_option("--seeds", seed_count, "run seeds 1..N")->check(CLI::PositiveNumber);
  run->add_option("--out,-o", common.out, "output directory");
  run->callback([&] {
    Json doc = config_path.empty() ? Json::object() : read_json(config_path);
    if (config_path.empty() && !dataset) {
      throw CLI::ValidationError("need --config or --dataset");
    }
    if (dataset) doc["topology"] = {{"dataset", *dataset}};
    if (run_mode) doc["mode"] = *run_mode;
    if (target) doc["target"] = *target;
    if (seed_count) doc["seeds"] = *seed_count;
    if (run_seed) doc["seeds"] = Json::array({*run_seed});
    if (!common.out.empty()) doc["output_dir"] = common.out;
    const ExperimentConfig config =
        config_from_json(nlohmann::json::parse(doc.dump()));
    const ExperimentReport report = run_experiment(config);
    for (const auto& failure : report.failures) std::cerr << failure << "\n";
    std::cout << "config_hash " << report.config_hash << "\n"
              << report.files.size() << " files in "
              << config.output_dir.string() << "\n";
    if (report.failures.size() == config.seeds.size()) {
      status = kExitData;
    } else if (report.budget_exceeded) {
      status = kExitBudget;
    }
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const SaturationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const OracleCapExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBudget;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
  return status;
}
