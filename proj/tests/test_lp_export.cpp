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

#include <filesystem>
#include <map>
#include <random>
#include <regex>
#include <sstream>

#include "doctest.h"
#include "ppmplan/error.hpp"
#include "ppmplan/exact.hpp"
#include "ppmplan/io.hpp"
#include "ppmplan/lp_export.hpp"
#include "random_instance.hpp"

using namespace ppmplan;
using ppmplan::testing::InstanceShape;
using ppmplan::testing::random_instance;

namespace {

const std::filesystem::path kData = PPMPLAN_TEST_DATA_DIR;

// Just enough of the LP format to read back what write_lp emits.
struct ParsedLp {
  long long constant = 0;
  std::map<std::string, double> objective;
  std::vector<std::map<std::string, double>> rows;  // each row <= 0
  std::map<std::string, int> upper;
  std::vector<std::string> integers;
};

std::map<std::string, double> parse_terms(const std::string& expr) {
  std::map<std::string, double> out;
  static const std::regex term(R"(([+-]?)\s*(\d*)\s*([px]\d+))");
  for (auto it = std::sregex_iterator(expr.begin(), expr.end(), term);
       it != std::sregex_iterator(); ++it) {
    const auto& m = *it;
    double c = m[2].length() ? std::stod(m[2]) : 1.0;
    if (m[1] == "-") c = -c;
    out[m[3]] += c;
  }
  return out;
}

ParsedLp parse(const std::string& text) {
  ParsedLp lp;
  std::istringstream in(text);
  std::string line, section, pending;
  static const std::regex dropped(R"(= (\d+) is dropped)");
  static const std::regex bound(R"(0 <= (\w+) <= (\d+))");
  auto flush = [&] {
    if (pending.empty()) return;
    const auto lhs = pending.substr(pending.find(':') + 1, pending.find("<=") - pending.find(':') - 1);
    REQUIRE(pending.find("<= 0") != std::string::npos);
    lp.rows.push_back(parse_terms(lhs));
    pending.clear();
  };
  while (std::getline(in, line)) {
    REQUIRE(line.size() <= 80);
    std::smatch m;
    if (line.starts_with("\\")) {
      if (std::regex_search(line, m, dropped)) lp.constant = std::stoll(m[1]);
      continue;
    }
    if (line == "Minimize" || line == "Subject To" || line == "Bounds" ||
        line == "General" || line == "End") {
      flush();
      section = line;
      continue;
    }
    if (section == "Minimize") {
      for (auto& [v, c] : parse_terms(line.substr(line.find(':') + 1))) lp.objective[v] += c;
    } else if (section == "Subject To") {
      if (line.find(':') != std::string::npos) flush();
      pending += line;
    } else if (section == "Bounds") {
      REQUIRE(std::regex_search(line, m, bound));
      lp.upper[m[1]] = std::stoi(m[2]);
    } else if (section == "General") {
      std::istringstream words(line);
      for (std::string w; words >> w;) lp.integers.push_back(w);
    }
  }
  REQUIRE(section == "End");
  return lp;
}

// Objective of the parsed model at the placement p, with x at its best.
double parsed_objective(const ParsedLp& lp, const CoverInstance& inst,
                        const Eigen::VectorXi& p) {
  std::map<std::string, double> value;
  for (Eigen::Index l = 0; l < p.size(); ++l) value["p" + std::to_string(l)] = p(l);
  const Eigen::VectorXi cov = coverage(inst, p);
  for (Eigen::Index e = 0; e < cov.size(); ++e) {
    value["x" + std::to_string(e)] = std::min(cov(e), inst.gamma());
  }
  for (const auto& row : lp.rows) {
    double lhs = 0;
    for (const auto& [v, c] : row) lhs += c * value.at(v);
    CHECK(lhs <= 1e-9);
  }
  for (const auto& [v, hi] : lp.upper) CHECK(value.at(v) <= hi);
  double z = static_cast<double>(lp.constant);
  for (const auto& [v, c] : lp.objective) z += c * value.at(v);
  return z;
}

}  // namespace

TEST_CASE("one two-hop group with gamma 1") {
  const CoverInstance inst(2, {PathGroup{{0, 1}, 1}}, 1);
  const std::string text = lp_text(inst);
  const ParsedLp lp = parse(text);
  CHECK(lp.constant == 6);
  CHECK(lp.objective == std::map<std::string, double>{{"p0", 1}, {"x0", -3}, {"x1", -3}});
  REQUIRE(lp.rows.size() == 2);
  CHECK(lp.rows[0] == std::map<std::string, double>{{"x0", 1}, {"p0", -1}});
  CHECK(lp.rows[1] == std::map<std::string, double>{{"x1", 1}, {"p0", -1}});
  CHECK(lp.upper == std::map<std::string, int>{{"p0", 1}, {"x0", 1}, {"x1", 1}});
  CHECK(lp.integers == std::vector<std::string>{"p0", "x0", "x1"});
  CHECK(text.find("\\ p0 = e0 e1 (c = 1)") != std::string::npos);
}

TEST_CASE("header documents the dropped constant") {
  const CoverInstance inst(2, {PathGroup{{0, 1}, 1}, PathGroup{{0}, 3}, PathGroup{{1}, 3}}, 2,
                           7, {"A>B", "B>C"});
  const std::string text = lp_text(inst);
  CHECK(text.find("gamma 2, alpha 7") != std::string::npos);
  CHECK(text.find("alpha * gamma * |E| = 28 is dropped") != std::string::npos);
  CHECK(text.find("\\ x0 = A>B") != std::string::npos);
  CHECK(text.find("\\ p0 = A>B B>C (c = 1)") != std::string::npos);
  CHECK(parse(text).objective.at("x1") == -7);
}

TEST_CASE("the written model prices every placement like the instance") {
  std::mt19937_64 rng(41);
  InstanceShape shape{8, 8, 3, 3, 5};
  for (int trial = 0; trial < 100; ++trial) {
    const CoverInstance inst = random_instance(rng, shape);
    const ParsedLp lp = parse(lp_text(inst));
    CHECK(lp.rows.size() == inst.link_count());
    for (int draw = 0; draw < 5; ++draw) {
      Eigen::VectorXi p(static_cast<Eigen::Index>(inst.group_count()));
      for (Eigen::Index l = 0; l < p.size(); ++l) {
        p(l) = static_cast<int>(rng() % static_cast<unsigned>(inst.counts()(l) + 1));
      }
      CHECK(parsed_objective(lp, inst, p) == doctest::Approx(evaluate(inst, p).objective));
    }
    const auto best = solve_exact(inst, {ObjectiveMode::weighted});
    CHECK(parsed_objective(lp, inst, best.p) == doctest::Approx(best.objective));
  }
}

TEST_CASE("golden file for a provisioned backbone instance") {
  const CoverInstance inst =
      instance_from_json(read_json(kData / "n14_tr_d100_s1_g1.instance.json"));
  const std::string golden = read_text(kData / "n14_tr_d100_s1_g1.lp");
  CHECK(lp_text(inst) == golden);
  CHECK(lp_text(inst) == lp_text(inst));

  // Optimum confirmed by an independent MILP solve of the golden file.
  const ParsedLp lp = parse(golden);
  const auto best = solve_exact(inst);
  REQUIRE(best.optimal);
  CHECK(best.objective == 20);
  CHECK(parsed_objective(lp, inst, best.p) == doctest::Approx(20));
}

TEST_CASE("export to an unwritable path") {
  const CoverInstance inst(1, {PathGroup{{0}, 1}}, 1);
  CHECK_THROWS_AS(export_lp(inst, "/nonexistent-dir/x.lp"), DataError);
  const auto path = std::filesystem::temp_directory_path() / "ppmplan_export_test.lp";
  export_lp(inst, path.string());
  CHECK(read_text(path) == lp_text(inst));
  std::filesystem::remove(path);
}
