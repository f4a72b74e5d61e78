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

#include "ppmplan/greedy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ppmplan/error.hpp"

namespace ppmplan {

double path_cost(std::span<const LinkIndex> links, const Eigen::VectorXi& z) {
  double harmonic = 0.0;
  for (LinkIndex e : links) {
    const int ze = z(static_cast<Eigen::Index>(e));
    if (ze > 0) harmonic += 1.0 / ze;
  }
  return harmonic > 0.0 ? 1.0 / harmonic
                        : std::numeric_limits<double>::infinity();
}

GreedyState::GreedyState(const CoverInstance& instance)
    : instance_(&instance) {
  const auto links = static_cast<Eigen::Index>(instance.link_count());
  const auto groups = static_cast<Eigen::Index>(instance.group_count());
  m_ = CoveringMatrix::Zero(links, groups);
  for (Eigen::Index l = 0; l < groups; ++l) {
    for (LinkIndex e : instance.group(static_cast<std::size_t>(l)).links) {
      m_(static_cast<Eigen::Index>(e), l) = 1;
    }
  }
  nonzeros_ = static_cast<std::size_t>(instance.delta().nonZeros());
  v_ = m_.cast<int>().colwise().sum().transpose();
  z_ = m_.cast<int>() * instance.counts();
  p_ = Eigen::VectorXi::Zero(groups);
  x_ = Eigen::VectorXi::Zero(links);
  link_open_.assign(instance.link_count(), 1);
  group_open_.assign(instance.group_count(), 1);
  open_links_ = instance.link_count();
}

std::vector<std::size_t> GreedyState::best_candidates() const {
  int best_v = 0;
  for (std::size_t l = 0; l < group_open_.size(); ++l) {
    if (group_open_[l]) best_v = std::max(best_v, v_(static_cast<Eigen::Index>(l)));
  }
  std::vector<std::size_t> out;
  if (best_v == 0) return out;
  double best_cost = std::numeric_limits<double>::infinity();
  for (std::size_t l = 0; l < group_open_.size(); ++l) {
    if (!group_open_[l] || v_(static_cast<Eigen::Index>(l)) != best_v) continue;
    const double cost = path_cost(instance_->group(l).links, z_);
    const double tol = 1e-12 * cost;
    if (out.empty() || cost < best_cost - tol) {
      best_cost = cost;
      out.assign(1, l);
    } else if (cost <= best_cost + tol) {
      out.push_back(l);
    }
  }
  return out;
}

void GreedyState::clear_row(std::size_t e) {
  const auto row = static_cast<Eigen::Index>(e);
  for (std::size_t l : instance_->groups_on_link()[e]) {
    const auto col = static_cast<Eigen::Index>(l);
    if (m_(row, col)) {
      m_(row, col) = 0;
      --v_(col);
      --nonzeros_;
    }
  }
  z_(row) = 0;
}

void GreedyState::clear_column(std::size_t l) {
  const auto col = static_cast<Eigen::Index>(l);
  const int unmonitored = instance_->group(l).count - p_(col);
  for (LinkIndex e : instance_->group(l).links) {
    const auto row = static_cast<Eigen::Index>(e);
    if (m_(row, col)) {
      m_(row, col) = 0;
      z_(row) -= unmonitored;
      --nonzeros_;
    }
  }
  v_(col) = 0;
}

void GreedyState::select(std::size_t l) {
  const auto col = static_cast<Eigen::Index>(l);
  if (!group_open_.at(l)) {
    throw DataError("group " + std::to_string(l) + " has no unmonitored LP");
  }
  ++iterations_;
  ++p_(col);
  const int gamma = instance_->gamma();
  for (LinkIndex e : instance_->group(l).links) {
    const auto row = static_cast<Eigen::Index>(e);
    ++x_(row);
    if (!link_open_[e]) continue;
    --z_(row);
    if (x_(row) >= gamma) {
      clear_row(e);
      link_open_[e] = 0;
      --open_links_;
    }
  }
  if (p_(col) >= instance_->group(l).count) {
    clear_column(l);
    group_open_[l] = 0;
  }
}

namespace {

PlacementSolution solve_opaque(const CoverInstance& instance) {
  Eigen::VectorXi p = Eigen::VectorXi::Zero(
      static_cast<Eigen::Index>(instance.group_count()));
  for (const PathGroup& g : instance.groups()) {
    if (g.hops() != 1) {
      throw DataError("opaque placement requires single-hop routes");
    }
  }
  for (std::size_t e = 0; e < instance.link_count(); ++e) {
    int remaining = instance.gamma();
    for (std::size_t l : instance.groups_on_link()[e]) {
      const int take = std::min(instance.group(l).count, remaining);
      p(static_cast<Eigen::Index>(l)) = take;
      remaining -= take;
    }
  }
  return evaluate(instance, std::move(p));
}

}  // namespace

PlacementSolution solve_greedy(const CoverInstance& instance,
                               Architecture architecture,
                               const GreedyOptions& options) {
  if (architecture == Architecture::opaque) return solve_opaque(instance);

  GreedyState state(instance);
  std::mt19937_64 rng(options.seed);
  while (!state.done()) {
    const auto candidates = state.best_candidates();
    std::size_t pick = candidates.front();
    if (options.tie_break == TieBreak::seeded_random && candidates.size() > 1) {
      std::uniform_int_distribution<std::size_t> dist(0, candidates.size() - 1);
      pick = candidates[dist(rng)];
    }
    state.select(pick);
  }
  return evaluate(instance, state.p());
}

}  // namespace ppmplan
