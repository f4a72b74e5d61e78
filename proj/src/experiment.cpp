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

#include "ppmplan/experiment.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <map>
#include <set>
#include <thread>

#include "ppmplan/error.hpp"
#include "ppmplan/io.hpp"
#include "ppmplan/load_search.hpp"
#include "ppmplan/otdr.hpp"
#include "ppmplan/version.hpp"

namespace ppmplan {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string num(double v, int precision = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", precision, v);
  return buf;
}

std::string_view arch_short(Architecture a) {
  return a == Architecture::opaque ? "Op" : "Tr";
}

template <typename T>
T get_or(const json& doc, const char* key, T fallback) {
  return doc.contains(key) ? doc.at(key).get<T>() : fallback;
}

void require_known_keys(const json& doc, std::initializer_list<std::string> keys,
                        const std::string& where) {
  const std::set<std::string> known(keys);
  for (const auto& [key, value] : doc.items()) {
    if (!known.count(key)) {
      throw DataError(where + ": unknown member '" + key + "'");
    }
  }
}

// ---------------------------------------------------------------- metrics

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double ms() const {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - start)
        .count();
  }
};

struct Measured {
  ScenarioResult row;
  std::optional<PlacementSolution> solution;
  std::optional<CoverInstance> instance;
  std::optional<OtdrPlan> otdr;
  bool budget_exceeded = false;
};

std::vector<int> lightpaths_per_link(const LightpathSet& set,
                                     std::size_t links) {
  std::vector<int> count(links, 0);
  for (const Lightpath& lp : set.lightpaths) {
    for (LinkIndex e : lp.route) ++count[e];
  }
  return count;
}

PlacementSolution place(const CoverInstance& instance, Architecture arch,
                        const ExperimentConfig& config, SolverKind solver) {
  if (solver == SolverKind::greedy) {
    return solve_greedy(instance, arch, {config.tie_break, 0});
  }
  return solve_exact(instance, {ObjectiveMode::lexicographic,
                                config.node_budget});
}

Measured measure(const Scenario& scenario, Architecture arch,
                 const LightpathSet& set, const Topology& topology,
                 const ExperimentConfig& config) {
  Measured m;
  m.row.label = scenario.label();
  m.row.architecture = arch;
  m.row.carried_tbps = set.carried_tbps();
  switch (scenario.kind) {
    case Scenario::Kind::unoptimized: {
      m.row.monitor_count = static_cast<double>(set.lightpaths.size());
      m.row.unsatisfied_npl_avg = unsatisfied_npl_avg(
          lightpaths_per_link(set, topology.link_count()), 1,
          NplMode::unoptimized);
      break;
    }
    case Scenario::Kind::optimized: {
      m.instance = build_cover_instance(set, topology, scenario.gamma);
      m.solution = place(*m.instance, arch, config, config.solver);
      m.budget_exceeded =
          config.solver == SolverKind::exact && !m.solution->optimal;
      m.row.monitor_count = m.solution->total_monitors;
      std::vector<int> x(m.solution->x.data(),
                         m.solution->x.data() + m.solution->x.size());
      m.row.unsatisfied_npl_avg =
          unsatisfied_npl_avg(x, scenario.gamma, NplMode::optimized);
      break;
    }
    case Scenario::Kind::otdr: {
      const auto lit = set.lit_links();
      m.otdr = count_otdrs(topology, lit);
      m.row.monitor_count = m.otdr->total;
      break;
    }
  }
  return m;
}

// One scenario label applies to one or both architectures.
std::vector<std::pair<Scenario, Architecture>> expand(
    const std::vector<std::string>& labels) {
  std::vector<std::pair<Scenario, Architecture>> out;
  for (const std::string& label : labels) {
    const Scenario s = parse_scenario(label);
    if (s.kind == Scenario::Kind::otdr) {
      out.emplace_back(s, Architecture::opaque);
      out.emplace_back(s, Architecture::transparent);
    } else {
      out.emplace_back(s, s.architecture);
    }
  }
  return out;
}

std::string row_name(const ScenarioResult& r) {
  return r.label == "OTDR" ? "OTDR-" + std::string(arch_short(r.architecture))
                           : r.label;
}

ProvisioningOptions provisioning_options(const ExperimentConfig& config,
                                         Architecture arch) {
  ProvisioningOptions o;
  o.architecture = arch;
  o.k_paths = config.k_paths;
  o.channels = config.channels;
  o.max_hops = config.max_hops;
  return o;
}

ProvisionSummary summarize(const Provisioner& p) {
  ProvisionSummary s;
  s.architecture = p.options().architecture;
  s.lightpaths = p.result().lightpaths.size();
  s.accepted = p.result().accepted.size();
  s.rejected = p.result().rejected.size();
  s.carried_tbps = p.result().carried_tbps();
  s.spectrum_occupation = p.spectrum_occupation();
  return s;
}

// ------------------------------------------------------------- per seed

struct SeedOutcome {
  std::uint64_t seed = 0;
  std::optional<std::string> error;
  bool budget_exceeded = false;
  std::vector<fs::path> files;
  // rejection
  std::vector<ScenarioResult> rows;
  std::size_t demands = 0;
  double offered_tbps = 0.0;
  double rejection = 0.0;
  // sweep: per load, per scenario
  std::vector<std::vector<ScenarioResult>> sweep_rows;
  std::vector<double> sweep_offered;
  std::vector<double> sweep_rejection_op;
  std::vector<double> sweep_rejection_tr;
  // compare
  std::vector<json> compare_rows;
};

class SeedRunner {
 public:
  SeedRunner(const ExperimentConfig& config, const Topology& topology,
             std::string hash)
      : config_(config), topology_(topology), hash_(std::move(hash)) {}

  SeedOutcome run(std::uint64_t seed) const {
    SeedOutcome out;
    out.seed = seed;
    dir_ = config_.output_dir / ("seed-" + std::to_string(seed));
    try {
      fs::create_directories(dir_);
      switch (config_.mode) {
        case ExperimentMode::rejection:
          rejection(seed, out);
          break;
        case ExperimentMode::sweep:
          sweep(seed, out);
          break;
        case ExperimentMode::compare:
          compare(seed, out);
          break;
      }
    } catch (const std::exception& ex) {
      out.error = ex.what();
    }
    return out;
  }

 private:
  fs::path file(SeedOutcome& out, const std::string& name) const {
    out.files.push_back(dir_ / name);
    return dir_ / name;
  }

  LoadSearchResult search(std::uint64_t seed) const {
    LoadSearchOptions o;
    o.target_rejection = config_.target_rejection;
    o.step = config_.step;
    o.demand_cap = config_.demand_cap;
    o.rates = config_.rates;
    o.provisioning = provisioning_options(config_, Architecture::transparent);
    return find_load_at_rejection(topology_, seed, o);
  }

  void rejection(std::uint64_t seed, SeedOutcome& out) const {
    const LoadSearchResult found = search(seed);
    Provisioner opaque(topology_,
                       provisioning_options(config_, Architecture::opaque));
    for (const Demand& d : found.demands.demands) opaque.offer(d);
    Provisioner transparent(
        topology_, provisioning_options(config_, Architecture::transparent));
    for (const Demand& d : found.demands.demands) transparent.offer(d);

    out.demands = found.demands.demands.size();
    out.offered_tbps = found.demands.total_tbps();
    out.rejection = found.rejection;
    save_demands(found.demands, topology_, file(out, "demands.csv"), hash_);
    out.files.push_back(dir_ / "demands.json");
    for (const Provisioner* p : {&opaque, &transparent}) {
      const std::string name = "lightpaths-" +
                               std::string(to_string(p->options().architecture));
      save_lightpaths(p->result(), summarize(*p), topology_,
                      file(out, name + ".csv"), hash_);
      out.files.push_back(dir_ / (name + ".json"));
    }

    std::string metrics =
        "# config_hash=" + hash_ +
        "\nscenario,monitors,carried_tbps,unsatisfied_npl_avg\n";
    for (const auto& [scenario, arch] : expand(config_.scenarios)) {
      const LightpathSet& set = arch == Architecture::opaque
                                    ? opaque.result()
                                    : transparent.result();
      Measured m = measure(scenario, arch, set, topology_, config_);
      out.budget_exceeded = out.budget_exceeded || m.budget_exceeded;
      const std::string name = row_name(m.row);
      if (m.solution) {
        write_json(file(out, "instance-" + name + ".json"),
                   instance_to_json(*m.instance, hash_));
        write_json(file(out, "solution-" + name + ".json"),
                   solution_to_json(*m.instance, *m.solution, hash_));
      }
      if (m.otdr) {
        write_json(file(out, "otdr-" + std::string(to_string(arch)) + ".json"),
                   otdr_to_json(topology_, *m.otdr, hash_));
      }
      metrics += name + "," + num(m.row.monitor_count, 0) + "," +
                 num(m.row.carried_tbps) + "," +
                 num(m.row.unsatisfied_npl_avg) + "\n";
      out.rows.push_back(std::move(m.row));
    }
    write_text(file(out, "metrics.csv"), metrics);
  }

  void sweep(std::uint64_t seed, SeedOutcome& out) const {
    DemandGenerator gen(topology_.node_count(), seed, config_.rates);
    Provisioner opaque(topology_,
                       provisioning_options(config_, Architecture::opaque));
    Provisioner transparent(
        topology_, provisioning_options(config_, Architecture::transparent));
    const auto scenarios = expand(config_.scenarios);
    std::string metrics = "# config_hash=" + hash_ +
                          "\ndemands,load_tbps,scenario,monitors,"
                          "unsatisfied_npl_avg\n";
    std::size_t offered = 0;
    double offered_gbps = 0.0;
    for (std::size_t load : config_.loads) {
      while (offered < load) {
        const Demand d = gen.next();
        opaque.offer(d);
        transparent.offer(d);
        offered_gbps += d.rate_gbps;
        ++offered;
      }
      out.sweep_offered.push_back(offered_gbps / 1000.0);
      out.sweep_rejection_op.push_back(opaque.result().rejection_fraction());
      out.sweep_rejection_tr.push_back(
          transparent.result().rejection_fraction());
      std::vector<ScenarioResult> rows;
      for (const auto& [scenario, arch] : scenarios) {
        const LightpathSet& set = arch == Architecture::opaque
                                      ? opaque.result()
                                      : transparent.result();
        Measured m = measure(scenario, arch, set, topology_, config_);
        out.budget_exceeded = out.budget_exceeded || m.budget_exceeded;
        metrics += std::to_string(load) + "," + num(offered_gbps / 1000.0) +
                   "," + row_name(m.row) + "," + num(m.row.monitor_count, 0) +
                   "," + num(m.row.unsatisfied_npl_avg) + "\n";
        rows.push_back(std::move(m.row));
      }
      out.sweep_rows.push_back(std::move(rows));
    }
    write_text(file(out, "metrics.csv"), metrics);
  }

  void compare(std::uint64_t seed, SeedOutcome& out) const {
    const LoadSearchResult found = search(seed);
    out.demands = found.demands.demands.size();
    out.offered_tbps = found.demands.total_tbps();
    out.rejection = found.rejection;
    for (int gamma : config_.gammas) {
      const CoverInstance instance =
          build_cover_instance(found.transparent, topology_, gamma);
      const Timer greedy_clock;
      const PlacementSolution greedy = solve_greedy(
          instance, Architecture::transparent, {config_.tie_break, seed});
      const double greedy_ms = greedy_clock.ms();
      const Timer exact_clock;
      const PlacementSolution exact = solve_exact(
          instance, {ObjectiveMode::lexicographic, config_.node_budget});
      const double exact_ms = exact_clock.ms();
      out.budget_exceeded = out.budget_exceeded || !exact.optimal;

      json row;
      row["seed"] = seed;
      row["gamma"] = gamma;
      row["groups"] = instance.group_count();
      row["lightpaths"] = instance.total_count();
      row["greedy_monitors"] = greedy.total_monitors;
      row["greedy_unsatisfied"] = greedy.unsatisfied;
      row["exact_monitors"] = exact.total_monitors;
      row["exact_unsatisfied"] = exact.unsatisfied;
      row["exact_optimal"] = exact.optimal;
      row["exact_nodes"] = exact.nodes;
      row["gap_pct"] =
          exact.total_monitors > 0
              ? 100.0 * (greedy.total_monitors - exact.total_monitors) /
                    exact.total_monitors
              : 0.0;
      if (config_.record_timing) {
        row["greedy_ms"] = greedy_ms;
        row["exact_ms"] = exact_ms;
      }
      write_json(file(out, "solution-greedy-g" + std::to_string(gamma) +
                               ".json"),
                 solution_to_json(instance, greedy, hash_));
      write_json(file(out, "solution-exact-g" + std::to_string(gamma) +
                               ".json"),
                 solution_to_json(instance, exact, hash_));
      out.compare_rows.push_back(std::move(row));
    }
  }

  const ExperimentConfig& config_;
  const Topology& topology_;
  std::string hash_;
  // Set per run; each runner instance serves a single thread.
  mutable fs::path dir_;
};

std::vector<SeedOutcome> run_seeds(const ExperimentConfig& config,
                                   const Topology& topology,
                                   const std::string& hash) {
  std::vector<SeedOutcome> outcomes(config.seeds.size());
  unsigned threads = config.threads;
  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads,
                               static_cast<unsigned>(config.seeds.size()));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    SeedRunner runner(config, topology, hash);
    for (std::size_t i = next++; i < outcomes.size(); i = next++) {
      outcomes[i] = runner.run(config.seeds[i]);
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return outcomes;
}

// ------------------------------------------------------------- merging

std::vector<ScenarioResult> mean_rows(
    const std::vector<const std::vector<ScenarioResult>*>& per_seed) {
  std::vector<ScenarioResult> mean;
  if (per_seed.empty()) return mean;
  mean = *per_seed.front();
  for (ScenarioResult& r : mean) {
    r.monitor_count = r.carried_tbps = r.unsatisfied_npl_avg = 0.0;
  }
  for (const auto* rows : per_seed) {
    for (std::size_t i = 0; i < mean.size(); ++i) {
      mean[i].monitor_count += (*rows)[i].monitor_count;
      mean[i].carried_tbps += (*rows)[i].carried_tbps;
      mean[i].unsatisfied_npl_avg += (*rows)[i].unsatisfied_npl_avg;
    }
  }
  const double n = static_cast<double>(per_seed.size());
  for (ScenarioResult& r : mean) {
    r.monitor_count /= n;
    r.carried_tbps /= n;
    r.unsatisfied_npl_avg /= n;
  }
  return mean;
}

std::string sha256_hex(const std::string& text) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(text.data(), text.size(), digest, &len, EVP_sha256(),
                 nullptr) != 1) {
    throw std::runtime_error("SHA-256 failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += kHex[digest[i] >> 4];
    out += kHex[digest[i] & 15];
  }
  return out;
}

}  // namespace

// ------------------------------------------------------------- config

Topology TopologySource::load() const {
  if (dataset) return load_topology(bundled_dataset(*dataset), span_length_km);
  if (file) return load_topology(*file, span_length_km);
  return generate_gabriel(gabriel_nodes, gabriel_seed, extent_km,
                          span_length_km.value_or(kDefaultSpanLengthKm));
}

void ExperimentConfig::validate() const {
  const int sources = (topology.dataset ? 1 : 0) + (topology.file ? 1 : 0) +
                      (topology.gabriel_nodes > 0 ? 1 : 0);
  if (sources != 1) {
    throw DataError("config: exactly one topology source is required");
  }
  if (topology.gabriel_nodes == 1) throw DataError("config: gabriel needs n >= 2");
  if (scenarios.empty()) throw DataError("config: no scenarios");
  for (const auto& s : scenarios) parse_scenario(s);
  if (seeds.empty()) throw DataError("config: no seeds");
  if (std::set<std::uint64_t>(seeds.begin(), seeds.end()).size() !=
      seeds.size()) {
    throw DataError("config: repeated seed");
  }
  if (!(target_rejection > 0 && target_rejection < 1)) {
    throw DataError("config: target must lie in (0, 1)");
  }
  if (step == 0) throw DataError("config: step must be positive");
  if (mode == ExperimentMode::sweep) {
    if (loads.empty()) throw DataError("config: sweep mode needs loads");
    if (!std::is_sorted(loads.begin(), loads.end()) || loads.front() == 0 ||
        std::adjacent_find(loads.begin(), loads.end()) != loads.end()) {
      throw DataError("config: loads must be positive and increasing");
    }
  }
  if (gammas.empty()) throw DataError("config: no gammas");
  for (int g : gammas) {
    if (g < 1) throw DataError("config: gamma must be at least 1");
  }
  if (rates.empty()) throw DataError("config: no rates");
  cost_model.validate();
  for (double f : fractions) {
    if (f < 0) throw DataError("config: negative fraction");
  }
}

ExperimentConfig config_from_json(const json& doc) {
  try {
    require_known_keys(doc,
                       {"topology", "scenarios", "seeds", "mode", "target",
                        "step", "cap", "loads", "gammas", "rates", "solver",
                        "node_budget", "tie_break", "k", "channels",
                        "max_hops", "cost_model", "fractions", "output_dir",
                        "record_timing", "threads"},
                       "config");
    ExperimentConfig c;
    const json& topo = doc.at("topology");
    require_known_keys(topo, {"dataset", "file", "gabriel", "span_length_km"},
                       "config.topology");
    if (topo.contains("dataset")) c.topology.dataset = topo["dataset"].get<std::string>();
    if (topo.contains("file")) c.topology.file = topo["file"].get<std::string>();
    if (topo.contains("gabriel")) {
      const json& g = topo["gabriel"];
      require_known_keys(g, {"nodes", "seed", "extent_km"}, "config.gabriel");
      c.topology.gabriel_nodes = g.at("nodes").get<std::size_t>();
      c.topology.gabriel_seed = get_or<std::uint64_t>(g, "seed", 1);
      c.topology.extent_km = get_or(g, "extent_km", kDefaultExtentKm);
    }
    if (topo.contains("span_length_km")) {
      c.topology.span_length_km = topo["span_length_km"].get<double>();
    }
    if (doc.contains("scenarios")) {
      c.scenarios = doc["scenarios"].get<std::vector<std::string>>();
    }
    if (doc.contains("seeds")) {
      const json& s = doc["seeds"];
      if (s.is_number_integer()) {
        const auto n = s.get<std::size_t>();
        c.seeds.clear();
        for (std::size_t i = 1; i <= n; ++i) c.seeds.push_back(i);
      } else {
        c.seeds = s.get<std::vector<std::uint64_t>>();
      }
    }
    if (doc.contains("mode")) {
      const auto m = doc["mode"].get<std::string>();
      if (m == "rejection") c.mode = ExperimentMode::rejection;
      else if (m == "sweep") c.mode = ExperimentMode::sweep;
      else if (m == "compare") c.mode = ExperimentMode::compare;
      else throw DataError("config: unknown mode '" + m + "'");
    }
    c.target_rejection = get_or(doc, "target", c.target_rejection);
    c.step = get_or(doc, "step", c.step);
    c.demand_cap = get_or(doc, "cap", c.demand_cap);
    c.loads = get_or(doc, "loads", c.loads);
    c.gammas = get_or(doc, "gammas", c.gammas);
    c.rates = get_or(doc, "rates", c.rates);
    if (doc.contains("solver")) {
      const auto s = doc["solver"].get<std::string>();
      if (s == "greedy") c.solver = SolverKind::greedy;
      else if (s == "exact") c.solver = SolverKind::exact;
      else throw DataError("config: unknown solver '" + s + "'");
    } else if (c.topology.gabriel_nodes >= 100) {
      c.solver = SolverKind::greedy;
    }
    c.node_budget = get_or(doc, "node_budget", c.node_budget);
    if (doc.contains("tie_break")) {
      const auto t = doc["tie_break"].get<std::string>();
      if (t == "deterministic") c.tie_break = TieBreak::deterministic;
      else if (t == "seeded_random") c.tie_break = TieBreak::seeded_random;
      else throw DataError("config: unknown tie_break '" + t + "'");
    }
    c.k_paths = get_or(doc, "k", c.k_paths);
    c.channels = get_or(doc, "channels", c.channels);
    if (doc.contains("max_hops") && !doc["max_hops"].is_null()) {
      c.max_hops = doc["max_hops"].get<int>();
    }
    if (doc.contains("cost_model")) {
      const json& m = doc["cost_model"];
      require_known_keys(m,
                         {"transponder_cost", "transponder_power",
                          "otdr_cost", "otdr_power"},
                         "config.cost_model");
      c.cost_model.transponder_cost =
          get_or(m, "transponder_cost", c.cost_model.transponder_cost);
      c.cost_model.transponder_power =
          get_or(m, "transponder_power", c.cost_model.transponder_power);
      c.cost_model.otdr_cost = get_or(m, "otdr_cost", c.cost_model.otdr_cost);
      c.cost_model.otdr_power =
          get_or(m, "otdr_power", c.cost_model.otdr_power);
    }
    c.fractions = get_or(doc, "fractions", c.fractions);
    if (doc.contains("output_dir")) {
      c.output_dir = doc["output_dir"].get<std::string>();
    }
    c.record_timing = get_or(doc, "record_timing", c.record_timing);
    c.threads = get_or(doc, "threads", c.threads);
    c.validate();
    return c;
  } catch (const json::exception& ex) {
    throw DataError(std::string("config: ") + ex.what());
  }
}

json config_to_json(const ExperimentConfig& c) {
  json doc;
  json topo;
  if (c.topology.dataset) topo["dataset"] = *c.topology.dataset;
  if (c.topology.file) topo["file"] = c.topology.file->generic_string();
  if (c.topology.gabriel_nodes > 0) {
    topo["gabriel"] = {{"nodes", c.topology.gabriel_nodes},
                       {"seed", c.topology.gabriel_seed},
                       {"extent_km", c.topology.extent_km}};
  }
  if (c.topology.span_length_km) {
    topo["span_length_km"] = *c.topology.span_length_km;
  }
  doc["topology"] = topo;
  doc["scenarios"] = c.scenarios;
  doc["seeds"] = c.seeds;
  doc["mode"] = c.mode == ExperimentMode::rejection ? "rejection"
                : c.mode == ExperimentMode::sweep   ? "sweep"
                                                    : "compare";
  doc["target"] = c.target_rejection;
  doc["step"] = c.step;
  doc["cap"] = c.demand_cap;
  doc["loads"] = c.loads;
  doc["gammas"] = c.gammas;
  doc["rates"] = c.rates;
  doc["solver"] = c.solver == SolverKind::greedy ? "greedy" : "exact";
  doc["node_budget"] = c.node_budget;
  doc["tie_break"] = c.tie_break == TieBreak::deterministic ? "deterministic"
                                                            : "seeded_random";
  doc["k"] = c.k_paths;
  doc["channels"] = c.channels;
  doc["max_hops"] = c.max_hops ? json(*c.max_hops) : json(nullptr);
  doc["cost_model"] = {{"transponder_cost", c.cost_model.transponder_cost},
                       {"transponder_power", c.cost_model.transponder_power},
                       {"otdr_cost", c.cost_model.otdr_cost},
                       {"otdr_power", c.cost_model.otdr_power}};
  doc["fractions"] = c.fractions;
  doc["record_timing"] = c.record_timing;
  return doc;
}

ExperimentConfig load_config(const fs::path& path) {
  const Json doc = read_json(path);
  return config_from_json(json::parse(doc.dump()));
}

std::string config_hash(const ExperimentConfig& config) {
  return sha256_hex(config_to_json(config).dump());
}

// ------------------------------------------------------------- run

ExperimentReport run_experiment(const ExperimentConfig& input) {
  ExperimentConfig config = input;
  config.validate();
  if (config.fractions.empty()) {
    for (int f = 0; f <= 100; ++f) config.fractions.push_back(f);
  }
  const Topology topology = config.topology.load();
  ExperimentReport report;
  report.config_hash = config_hash(config);
  const std::string& hash = report.config_hash;
  fs::create_directories(config.output_dir);

  const auto outcomes = run_seeds(config, topology, hash);

  std::vector<const SeedOutcome*> ok;
  Json failures = Json::array();
  for (const SeedOutcome& o : outcomes) {
    report.files.insert(report.files.end(), o.files.begin(), o.files.end());
    report.budget_exceeded = report.budget_exceeded || o.budget_exceeded;
    if (o.error) {
      report.failures.push_back("seed " + std::to_string(o.seed) + ": " +
                                *o.error);
      failures.push_back({{"seed", o.seed}, {"error", *o.error}});
    } else {
      ok.push_back(&o);
    }
  }
  auto out_file = [&](const std::string& name) {
    report.files.push_back(config.output_dir / name);
    return config.output_dir / name;
  };
  const std::string stamp = "# config_hash=" + hash + "\n";

  Json summary;
  summary["tool"] = {{"name", "ppmplan"}, {"version", kVersion}};
  summary["eigen"] = std::to_string(EIGEN_WORLD_VERSION) + "." +
                     std::to_string(EIGEN_MAJOR_VERSION) + "." +
                     std::to_string(EIGEN_MINOR_VERSION);
  summary["config_hash"] = hash;
  summary["config"] = Json::parse(config_to_json(config).dump());
  summary["topology"] = {{"name", topology.name()},
                         {"nodes", topology.node_count()},
                         {"directed_links", topology.link_count()}};
  Json seeds_done = Json::array();
  for (const auto* o : ok) seeds_done.push_back(o->seed);
  summary["seeds_completed"] = seeds_done;
  summary["failures"] = failures;
  summary["partial"] = !report.failures.empty();
  summary["budget_exceeded"] = report.budget_exceeded;

  if (config.mode == ExperimentMode::rejection && !ok.empty()) {
    std::vector<const std::vector<ScenarioResult>*> rows;
    double demands = 0, offered = 0, rejection = 0;
    for (const auto* o : ok) {
      rows.push_back(&o->rows);
      demands += static_cast<double>(o->demands);
      offered += o->offered_tbps;
      rejection += o->rejection;
    }
    const double n = static_cast<double>(ok.size());
    auto mean = mean_rows(rows);
    attach_crossings(mean, config.cost_model);
    report.scenarios = mean;

    std::string table =
        stamp + "scenario,monitors,carried_tbps,unsatisfied_npl_avg\n";
    std::string crossing = stamp + "scenario,cost_pct,power_pct\n";
    Json table_json = Json::array();
    for (const ScenarioResult& r : mean) {
      table += row_name(r) + "," + num(r.monitor_count, 1) + "," +
               num(r.carried_tbps) + "," + num(r.unsatisfied_npl_avg) + "\n";
      Json j = {{"scenario", row_name(r)},
                {"monitors", r.monitor_count},
                {"carried_tbps", r.carried_tbps},
                {"unsatisfied_npl_avg", r.unsatisfied_npl_avg}};
      if (r.crossing_cost_pct) {
        crossing += row_name(r) + "," + num(*r.crossing_cost_pct, 1) + "," +
                    num(*r.crossing_power_pct, 1) + "\n";
        j["crossing_cost_pct"] = *r.crossing_cost_pct;
        j["crossing_power_pct"] = *r.crossing_power_pct;
      }
      table_json.push_back(std::move(j));
    }
    write_text(out_file("monitor_counts.csv"), table);
    write_text(out_file("crossing.csv"), crossing);
    for (Dimension d : {Dimension::cost, Dimension::power}) {
      std::vector<ScenarioResult> curve_input;
      for (const auto& r : mean) {
        if (r.monitor_count > 0 || r.label == "OTDR") curve_input.push_back(r);
      }
      const auto curve =
          sweep_cost_curves(curve_input, config.cost_model, config.fractions, d);
      std::string text = stamp + "scenario,fraction_pct," +
                         std::string(to_string(d)) + "_per_tbps\n";
      for (const CurvePoint& p : curve) {
        text += p.scenario + "," + num(p.fraction_pct, 2) + "," +
                num(p.cost_per_tbps) + "\n";
      }
      write_text(out_file(std::string(to_string(d)) + "_curves.csv"), text);
    }
    summary["load"] = {{"demands", demands / n},
                       {"offered_tbps", offered / n},
                       {"transparent_rejection", rejection / n}};
    summary["scenarios"] = table_json;
  }

  if (config.mode == ExperimentMode::sweep && !ok.empty()) {
    const double n = static_cast<double>(ok.size());
    std::string loads = stamp +
                        "demands,load_tbps,rejection_opaque,"
                        "rejection_transparent\n";
    std::vector<std::vector<ScenarioResult>> means;
    std::vector<double> offered(config.loads.size(), 0.0);
    for (std::size_t k = 0; k < config.loads.size(); ++k) {
      std::vector<const std::vector<ScenarioResult>*> rows;
      double rej_op = 0, rej_tr = 0;
      for (const auto* o : ok) {
        rows.push_back(&o->sweep_rows[k]);
        offered[k] += o->sweep_offered[k] / n;
        rej_op += o->sweep_rejection_op[k] / n;
        rej_tr += o->sweep_rejection_tr[k] / n;
      }
      means.push_back(mean_rows(rows));
      loads += std::to_string(config.loads[k]) + "," + num(offered[k]) + "," +
               num(rej_op) + "," + num(rej_tr) + "\n";
    }
    std::string curve = stamp + "scenario,load_tbps,monitors,unsatisfied_npl\n";
    for (std::size_t s = 0; s < means.front().size(); ++s) {
      for (std::size_t k = 0; k < means.size(); ++k) {
        const ScenarioResult& r = means[k][s];
        curve += row_name(r) + "," + num(offered[k]) + "," +
                 num(r.monitor_count, 2) + "," + num(r.unsatisfied_npl_avg) +
                 "\n";
      }
    }
    write_text(out_file("loads.csv"), loads);
    write_text(out_file("monitors_vs_load.csv"), curve);
  }

  if (config.mode == ExperimentMode::compare && !ok.empty()) {
    std::string text = stamp +
                       "seed,gamma,groups,lightpaths,greedy_monitors,"
                       "greedy_unsatisfied,exact_monitors,exact_unsatisfied,"
                       "exact_optimal,gap_pct";
    if (config.record_timing) text += ",greedy_ms,exact_ms";
    text += "\n";
    double gap_sum = 0, gap_max = 0;
    std::size_t counted = 0;
    for (const auto* o : ok) {
      for (const json& r : o->compare_rows) {
        text += std::to_string(r["seed"].get<std::uint64_t>()) + "," +
                std::to_string(r["gamma"].get<int>()) + "," +
                std::to_string(r["groups"].get<std::size_t>()) + "," +
                std::to_string(r["lightpaths"].get<long long>()) + "," +
                std::to_string(r["greedy_monitors"].get<int>()) + "," +
                std::to_string(r["greedy_unsatisfied"].get<int>()) + "," +
                std::to_string(r["exact_monitors"].get<int>()) + "," +
                std::to_string(r["exact_unsatisfied"].get<int>()) + "," +
                (r["exact_optimal"].get<bool>() ? "1" : "0") + "," +
                num(r["gap_pct"].get<double>(), 3);
        if (config.record_timing) {
          text += "," + num(r["greedy_ms"].get<double>(), 1) + "," +
                  num(r["exact_ms"].get<double>(), 1);
        }
        text += "\n";
        if (r["exact_optimal"].get<bool>()) {
          gap_sum += r["gap_pct"].get<double>();
          gap_max = std::max(gap_max, r["gap_pct"].get<double>());
          ++counted;
        }
      }
    }
    write_text(out_file("compare.csv"), text);
    summary["compare"] = {
        {"proven_instances", counted},
        {"mean_gap_pct", counted ? gap_sum / static_cast<double>(counted) : 0.0},
        {"max_gap_pct", gap_max}};
  }

  write_json(out_file("summary.json"), summary);
  std::sort(report.files.begin(), report.files.end());
  return report;
}

}  // namespace ppmplan
