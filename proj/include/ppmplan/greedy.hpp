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

#ifndef PPMPLAN_GREEDY_HPP_
#define PPMPLAN_GREEDY_HPP_

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "ppmplan/cover_instance.hpp"
#include "ppmplan/provisioning.hpp"

namespace ppmplan {

enum class TieBreak { deterministic, seeded_random };

struct GreedyOptions {
  TieBreak tie_break = TieBreak::deterministic;
  std::uint64_t seed = 0;
};

// 1 / sum(1 / z_e) over the route's links with z_e > 0; +inf when no link
// on the route still needs monitors. Lower is better: routes through links
// that few unmonitored lightpaths can serve are preferred.
double path_cost(std::span<const LinkIndex> links, const Eigen::VectorXi& z);

// Working state of the covering heuristic.
//   M(e, l) = 1  iff route l uses e, e is below gamma and l has an
//                unmonitored lightpath;
//   v_l = sum_e M(e, l)            (links one more monitor on l would help)
//   z_e = sum_l (c_l - p_l) M(e, l) (unmonitored lightpaths usable on e)
// v and z are maintained incrementally; covering() exposes M so both can
// be recomputed from scratch.
class GreedyState {
 public:
  using CoveringMatrix =
      Eigen::Matrix<std::int8_t, Eigen::Dynamic, Eigen::Dynamic>;

  explicit GreedyState(const CoverInstance& instance);

  // True once every link meets gamma or M is all zero.
  bool done() const { return open_links_ == 0 || nonzeros_ == 0; }

  // Open groups with maximal v, and among those minimal cost, ascending.
  std::vector<std::size_t> best_candidates() const;
  // Monitors one more lightpath of group l.
  void select(std::size_t l);

  const CoveringMatrix& covering() const { return m_; }
  const Eigen::VectorXi& v() const { return v_; }
  const Eigen::VectorXi& z() const { return z_; }
  const Eigen::VectorXi& p() const { return p_; }
  // Raw NPL counts, not capped at gamma.
  const Eigen::VectorXi& npl() const { return x_; }
  bool link_open(std::size_t e) const { return link_open_[e] != 0; }
  bool group_open(std::size_t l) const { return group_open_[l] != 0; }
  std::size_t iterations() const { return iterations_; }

 private:
  void clear_row(std::size_t e);
  void clear_column(std::size_t l);

  const CoverInstance* instance_;
  CoveringMatrix m_;
  Eigen::VectorXi v_, z_, p_, x_;
  std::vector<char> link_open_, group_open_;
  std::size_t open_links_ = 0;
  std::size_t nonzeros_ = 0;
  std::size_t iterations_ = 0;
};

// Opaque: every route is a single link, so each link is settled on its own
// with min(c_l, gamma) monitors. Transparent: repeated greedy selection
// over GreedyState until done. Throws DataError for an opaque call on an
// instance with multi-hop routes.
PlacementSolution solve_greedy(const CoverInstance& instance,
                               Architecture architecture,
                               const GreedyOptions& options = {});

}  // namespace ppmplan

#endif  // PPMPLAN_GREEDY_HPP_
