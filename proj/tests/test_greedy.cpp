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

#include <numeric>
#include <random>

#include "doctest.h"
#include "ppmplan/error.hpp"
#include "ppmplan/exact.hpp"
#include "ppmplan/greedy.hpp"
#include "ppmplan/oracle.hpp"
#include "ppmplan/provisioning.hpp"
#include "random_instance.hpp"

using namespace ppmplan;
using ppmplan::testing::InstanceShape;
using ppmplan::testing::random_instance;

namespace {

PathGroup group(std::vector<LinkIndex> links, int count) {
  return PathGroup{std::move(links), count};
}

// M, v and z rebuilt from their definitions.
void check_state(const CoverInstance& inst, const GreedyState& s) {
  const auto& m = s.covering();
  for (std::size_t e = 0; e < inst.link_count(); ++e) {
    for (std::size_t l = 0; l < inst.group_count(); ++l) {
      const auto& ls = inst.group(l).links;
      const bool uses = std::find(ls.begin(), ls.end(), e) != ls.end();
      const bool expect = uses && s.npl()(static_cast<Eigen::Index>(e)) < inst.gamma() &&
                          s.p()(static_cast<Eigen::Index>(l)) < inst.group(l).count;
      CHECK((m(static_cast<Eigen::Index>(e), static_cast<Eigen::Index>(l)) != 0) == expect);
    }
  }
  const Eigen::VectorXi v = m.cast<int>().colwise().sum().transpose();
  const Eigen::VectorXi z = m.cast<int>() * (inst.counts() - s.p());
  CHECK(v == s.v());
  CHECK(z == s.z());
}

std::vector<std::size_t> selection_order(const CoverInstance& inst) {
  GreedyState s(inst);
  std::vector<std::size_t> order;
  while (!s.done()) {
    const auto best = s.best_candidates();
    REQUIRE(!best.empty());
    order.push_back(best.front());
    s.select(best.front());
  }
  return order;
}

}  // namespace

TEST_CASE("grouping lightpaths by route") {
  const Topology t = topology_from_json(
      {{"name", "abc"},
       {"span_length_km", 80},
       {"nodes", {"A", "B", "C"}},
       {"edges",
        {{{"a", "A"}, {"b", "B"}, {"length_km", 10}},
         {{"a", "B"}, {"b", "C"}, {"length_km", 10}}}}});
  const LinkIndex ab = t.parse_link_label("A>B");
  const LinkIndex bc = t.parse_link_label("B>C");
  LightpathSet set;
  set.lightpaths.push_back({0, 0, 1, {ab}, 800, 0, 100});
  set.lightpaths.push_back({1, 0, 2, {ab, bc}, 800, 1, 100});
  set.lightpaths.push_back({2, 0, 1, {ab}, 800, 2, 100});
  const CoverInstance inst = build_cover_instance(set, t, 1);
  REQUIRE(inst.group_count() == 2);
  CHECK(inst.group(0).links == Route{ab});
  CHECK(inst.group(0).count == 2);
  CHECK(inst.group(1).links == Route{ab, bc});
  CHECK(inst.group(1).count == 1);
  CHECK(inst.delta().coeff(static_cast<int>(ab), 1) == 1);
  CHECK(inst.delta().coeff(static_cast<int>(bc), 1) == 1);
  CHECK(inst.delta().coeff(static_cast<int>(bc), 0) == 0);
  CHECK(inst.link_count() == t.link_count());
  CHECK(inst.link_label(ab) == "A>B");
  CHECK(inst.alpha() == 3);
  CHECK(CoverInstance::alpha_for(AlphaPolicy::strict_dominance, inst.groups()) == 4);
}

TEST_CASE("opaque provisioning yields single-hop groups") {
  const Topology t = load_topology(bundled_dataset("n14"));
  ProvisioningOptions o;
  o.architecture = Architecture::opaque;
  const auto set = provision(t, generate_demands(t, 400, 2).demands, o);
  const CoverInstance inst = build_cover_instance(set, t, 2);
  for (const PathGroup& g : inst.groups()) CHECK(g.hops() == 1);
  CHECK(inst.total_count() == static_cast<long long>(set.lightpaths.size()));
}

TEST_CASE("empty lightpath set leaves every link unsatisfied") {
  const CoverInstance inst(4, {}, 1);
  CHECK(min_unsatisfied(inst) == 4);
  CHECK(solve_greedy(inst, Architecture::transparent).unsatisfied == 4);
  CHECK(solve_greedy(inst, Architecture::opaque).unsatisfied == 4);
  CHECK(solve_exact(inst).unsatisfied == 4);
  CHECK(brute_force_oracle(inst).unsatisfied == 4);
  CHECK(brute_force_oracle(inst).total_monitors == 0);
}

TEST_CASE("instance validation") {
  CHECK_THROWS_AS(CoverInstance(2, {group({0}, 1)}, 0), DataError);
  CHECK_THROWS_AS(CoverInstance(2, {group({0}, 0)}, 1), DataError);
  CHECK_THROWS_AS(CoverInstance(2, {group({0, 0}, 1)}, 1), DataError);
  CHECK_THROWS_AS(CoverInstance(2, {group({2}, 1)}, 1), DataError);
  CHECK_THROWS_AS(CoverInstance(2, {group({}, 1)}, 1), DataError);
  CHECK_THROWS_AS(CoverInstance(2, {group({0, 1}, 1)}, 1, 2), DataError);
  CHECK_NOTHROW(CoverInstance(2, {group({0, 1}, 1)}, 1, 3));
}

TEST_CASE("evaluate caps achieved NPL at gamma") {
  const CoverInstance inst(2, {group({0, 1}, 4), group({0}, 3)}, 2);
  Eigen::VectorXi p(2);
  p << 3, 2;
  const auto s = evaluate(inst, p);
  CHECK(s.x(0) == 2);
  CHECK(s.x(1) == 2);
  CHECK(s.unsatisfied == 0);
  CHECK(s.total_monitors == 5);
  CHECK(s.objective == 5);
  p << 5, 0;
  CHECK_THROWS_AS(evaluate(inst, p), DataError);
  p << -1, 0;
  CHECK_THROWS_AS(evaluate(inst, p), DataError);
}

TEST_CASE("opaque greedy: min(c, gamma) per link") {
  const CoverInstance inst(1, {group({0}, 5)}, 3);
  const auto s = solve_greedy(inst, Architecture::opaque);
  CHECK(s.p(0) == 3);
  CHECK(s.x(0) == 3);
  const CoverInstance multi(2, {group({0, 1}, 1)}, 1);
  CHECK_THROWS_AS(solve_greedy(multi, Architecture::opaque), DataError);
}

TEST_CASE("path cost is the inverse harmonic sum over needy links") {
  Eigen::VectorXi z(3);
  z << 2, 3, 0;
  CHECK(path_cost(std::vector<LinkIndex>{0, 1}, z) == doctest::Approx(6.0 / 5.0));
  CHECK(path_cost(std::vector<LinkIndex>{0, 1, 2}, z) == doctest::Approx(6.0 / 5.0));
  CHECK(path_cost(std::vector<LinkIndex>{1}, z) == doctest::Approx(3.0));
}

TEST_CASE("four-link walkthrough: ties on v resolved by cost") {
  // Links a..d, gamma 1. Long routes {a,b}, {b,c}, {c,d} and one
  // single-hop lightpath per link. z = (2,3,3,2), so {a,b} and {c,d} cost
  // 6/5 while {b,c} costs 3/2.
  const CoverInstance inst(4,
                           {group({0, 1}, 1), group({1, 2}, 1), group({2, 3}, 1),
                            group({0}, 1), group({1}, 1), group({2}, 1),
                            group({3}, 1)},
                           1);
  GreedyState s(inst);
  check_state(inst, s);
  CHECK(s.z() == (Eigen::VectorXi(4) << 2, 3, 3, 2).finished());
  CHECK(path_cost(inst.group(0).links, s.z()) == doctest::Approx(1.2));
  CHECK(path_cost(inst.group(1).links, s.z()) == doctest::Approx(1.5));
  CHECK(path_cost(inst.group(2).links, s.z()) == doctest::Approx(1.2));
  CHECK(s.best_candidates() == std::vector<std::size_t>{0, 2});
  s.select(0);
  check_state(inst, s);
  CHECK(s.best_candidates() == std::vector<std::size_t>{2});
  s.select(2);
  check_state(inst, s);
  CHECK(s.done());
  const auto sol = solve_greedy(inst, Architecture::transparent);
  CHECK(sol.total_monitors == 2);
  CHECK(sol.unsatisfied == 0);
  CHECK(sol.total_monitors == brute_force_oracle(inst).total_monitors);
}

TEST_CASE("three-link example: two long routes, the short one unused") {
  const CoverInstance inst(3, {group({0, 1}, 1), group({1, 2}, 1), group({1}, 5)}, 1);
  GreedyState s(inst);
  CHECK(s.v() == (Eigen::VectorXi(3) << 2, 2, 1).finished());
  CHECK(s.best_candidates().front() == 0);
  s.select(0);
  check_state(inst, s);
  // e2 is now satisfied, so the other long route helps only on e3.
  CHECK(s.v()(1) == 1);
  CHECK(s.best_candidates() == std::vector<std::size_t>{1});
  const auto sol = solve_greedy(inst, Architecture::transparent);
  CHECK(sol.p == (Eigen::VectorXi(3) << 1, 1, 0).finished());
  CHECK(sol.total_monitors == 2);
  CHECK(brute_force_oracle(inst).total_monitors == 2);
}

TEST_CASE("greedy state stays consistent with its definitions") {
  std::mt19937_64 rng(5);
  InstanceShape shape{8, 10, 4, 3, 5};
  for (int trial = 0; trial < 200; ++trial) {
    const CoverInstance inst = random_instance(rng, shape);
    GreedyState s(inst);
    check_state(inst, s);
    std::size_t steps = 0;
    while (!s.done()) {
      s.select(s.best_candidates().front());
      check_state(inst, s);
      ++steps;
    }
    CHECK(steps == s.iterations());
    CHECK(static_cast<long long>(steps) <= inst.total_count());
  }
}

TEST_CASE("greedy never beats the exact optimum") {
  std::mt19937_64 rng(6);
  InstanceShape shape{7, 7, 3, 3, 4};
  for (int trial = 0; trial < 300; ++trial) {
    const CoverInstance inst = random_instance(rng, shape);
    const auto g = solve_greedy(inst, Architecture::transparent);
    const auto x = solve_exact(inst);
    REQUIRE(x.optimal);
    CHECK_FALSE(g.optimal);
    CHECK(g.unsatisfied >= x.unsatisfied);
    // Monitoring until nothing more can help reaches the least deficit.
    CHECK(g.unsatisfied == min_unsatisfied(inst));
    if (g.unsatisfied == 0 && x.unsatisfied == 0) {
      CHECK(g.total_monitors >= x.total_monitors);
    }
    CHECK((g.x.array() <= inst.gamma()).all());
    CHECK((g.p.array() <= inst.counts().array()).all());
  }
}

TEST_CASE("greedy selection is invariant to scaling the counts") {
  std::mt19937_64 rng(8);
  InstanceShape shape{6, 6, 3, 2, 3};
  for (int trial = 0; trial < 100; ++trial) {
    const CoverInstance base = random_instance(rng, shape);
    std::vector<PathGroup> groups = base.groups();
    for (PathGroup& g : groups) {
      g.count = base.gamma() * static_cast<int>(g.hops()) + g.count;
    }
    const CoverInstance lifted(base.link_count(), groups, base.gamma());
    for (PathGroup& g : groups) g.count *= 3;
    const CoverInstance scaled(base.link_count(), groups, base.gamma());

    // With no monitors yet, z scales exactly, so the first pick agrees.
    if (lifted.group_count() > 0) {
      CHECK(GreedyState(lifted).best_candidates() ==
            GreedyState(scaled).best_candidates());
    }
    // Along a run, ranking by cost under a uniformly scaled z is unchanged.
    GreedyState s(lifted);
    while (!s.done()) {
      const Eigen::VectorXi z3 = 3 * s.z();
      int vmax = 0;
      for (std::size_t l = 0; l < lifted.group_count(); ++l) {
        if (s.group_open(l)) vmax = std::max(vmax, s.v()(static_cast<Eigen::Index>(l)));
      }
      double best = 0, best3 = 0;
      std::vector<std::size_t> arg, arg3;
      for (std::size_t l = 0; l < lifted.group_count(); ++l) {
        if (!s.group_open(l) || s.v()(static_cast<Eigen::Index>(l)) != vmax || vmax == 0) {
          continue;
        }
        const double c = path_cost(lifted.group(l).links, s.z());
        const double c3 = path_cost(lifted.group(l).links, z3);
        CHECK(c3 == doctest::Approx(3 * c));
        if (arg.empty() || c < best - 1e-12) { arg = {l}; best = c; }
        else if (std::abs(c - best) <= 1e-12) arg.push_back(l);
        if (arg3.empty() || c3 < best3 - 1e-12) { arg3 = {l}; best3 = c3; }
        else if (std::abs(c3 - best3) <= 1e-12) arg3.push_back(l);
      }
      CHECK(arg == arg3);
      CHECK(arg == s.best_candidates());
      s.select(s.best_candidates().front());
    }
  }
}

TEST_CASE("seeded random tie-breaking is reproducible") {
  std::mt19937_64 rng(9);
  InstanceShape shape{8, 10, 3, 2, 4};
  for (int trial = 0; trial < 50; ++trial) {
    const CoverInstance inst = random_instance(rng, shape);
    const GreedyOptions o{TieBreak::seeded_random, 77};
    const auto a = solve_greedy(inst, Architecture::transparent, o);
    const auto b = solve_greedy(inst, Architecture::transparent, o);
    CHECK(a.p == b.p);
    CHECK(a.unsatisfied == min_unsatisfied(inst));
  }
}

TEST_CASE("opaque greedy equals the exact optimum on single-hop instances") {
  std::mt19937_64 rng(10);
  InstanceShape shape{8, 10, 5, 4, 1};
  for (int trial = 0; trial < 200; ++trial) {
    const CoverInstance inst = random_instance(rng, shape);
    const auto g = solve_greedy(inst, Architecture::opaque);
    const auto x = solve_exact(inst);
    CHECK(g.objective == x.objective);
    CHECK(g.objective == solve_greedy(inst, Architecture::transparent).objective);
  }
}
