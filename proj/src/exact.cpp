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

#include "ppmplan/exact.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <map>
#include <numeric>
#include <vector>

#include "ppmplan/bounded_simplex.hpp"

namespace ppmplan {
namespace {

using Lp = BoundedSimplex<double>;

constexpr double kIntTol = 1e-6;

struct UnionFind {
  explicit UnionFind(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), std::size_t{0});
  }
  std::size_t find(std::size_t a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<std::size_t> parent;
};

// A connected piece of the residual problem: local group/link numbering
// with incidence lists in local indices.
struct Component {
  std::vector<std::size_t> groups;  // instance group ids
  std::vector<std::size_t> links;   // instance link ids
  std::vector<std::vector<std::size_t>> group_links;  // local
  std::vector<int> cap;             // per local group
  std::vector<int> need;            // per local link (lexicographic)
};

std::vector<Component> split(const CoverInstance& instance,
                             const std::vector<char>& group_active,
                             const std::vector<char>& link_active,
                             const std::vector<int>& cap,
                             const std::vector<int>& need) {
  UnionFind uf(instance.group_count());
  for (std::size_t e = 0; e < instance.link_count(); ++e) {
    if (!link_active[e]) continue;
    std::size_t first = std::numeric_limits<std::size_t>::max();
    for (std::size_t l : instance.groups_on_link()[e]) {
      if (!group_active[l]) continue;
      if (first == std::numeric_limits<std::size_t>::max()) {
        first = l;
      } else {
        uf.unite(first, l);
      }
    }
  }
  std::map<std::size_t, std::size_t> root_to_comp;
  std::vector<Component> comps;
  std::vector<std::size_t> local(instance.group_count());
  for (std::size_t l = 0; l < instance.group_count(); ++l) {
    if (!group_active[l]) continue;
    auto [it, fresh] = root_to_comp.emplace(uf.find(l), comps.size());
    if (fresh) comps.emplace_back();
    Component& c = comps[it->second];
    local[l] = c.groups.size();
    c.groups.push_back(l);
    c.cap.push_back(cap[l]);
    c.group_links.emplace_back();
  }
  for (std::size_t e = 0; e < instance.link_count(); ++e) {
    if (!link_active[e]) continue;
    Component* owner = nullptr;
    for (std::size_t l : instance.groups_on_link()[e]) {
      if (group_active[l]) {
        owner = &comps[root_to_comp.at(uf.find(l))];
        break;
      }
    }
    if (owner == nullptr) continue;
    const std::size_t le = owner->links.size();
    owner->links.push_back(e);
    owner->need.push_back(need[e]);
    for (std::size_t l : instance.groups_on_link()[e]) {
      if (group_active[l]) owner->group_links[local[l]].push_back(le);
    }
  }
  return comps;
}

// Per-component model: LP relaxation, rounding, and integer objective.
class Model {
 public:
  Model(const Component& comp, ObjectiveMode mode, int gamma, int alpha)
      : comp_(comp), mode_(mode), gamma_(gamma), alpha_(alpha) {}

  Lp relaxation() const {
    const auto n = static_cast<Eigen::Index>(comp_.groups.size());
    const auto m = static_cast<Eigen::Index>(comp_.links.size());
    if (mode_ == ObjectiveMode::lexicographic) {
      // -delta p <= -need, 0 <= p <= cap, min sum p; start with p = cap.
      Eigen::MatrixXd a = Eigen::MatrixXd::Zero(m, n);
      for (Eigen::Index l = 0; l < n; ++l) {
        for (std::size_t e : comp_.group_links[static_cast<std::size_t>(l)]) {
          a(static_cast<Eigen::Index>(e), l) = -1.0;
        }
      }
      Eigen::VectorXd b(m);
      for (Eigen::Index e = 0; e < m; ++e) {
        b(e) = -comp_.need[static_cast<std::size_t>(e)];
      }
      Eigen::VectorXd upper(n);
      for (Eigen::Index l = 0; l < n; ++l) {
        upper(l) = comp_.cap[static_cast<std::size_t>(l)];
      }
      return Lp(a, b, Eigen::VectorXd::Ones(n), Eigen::VectorXd::Zero(n),
                upper, std::vector<bool>(static_cast<std::size_t>(n), true));
    }
    // x - delta p <= 0, 0 <= x <= gamma, 0 <= p <= cap,
    // min sum p - alpha sum x; start at zero.
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(m, n + m);
    for (Eigen::Index l = 0; l < n; ++l) {
      for (std::size_t e : comp_.group_links[static_cast<std::size_t>(l)]) {
        a(static_cast<Eigen::Index>(e), l) = -1.0;
      }
    }
    a.rightCols(m).setIdentity();
    Eigen::VectorXd c(n + m), upper(n + m);
    c.head(n).setOnes();
    c.tail(m).setConstant(-alpha_);
    for (Eigen::Index l = 0; l < n; ++l) {
      upper(l) = comp_.cap[static_cast<std::size_t>(l)];
    }
    upper.tail(m).setConstant(gamma_);
    return Lp(a, Eigen::VectorXd::Zero(m), c, Eigen::VectorXd::Zero(n + m),
              upper);
  }

  // Objective constant dropped from the relaxation.
  double offset() const {
    return mode_ == ObjectiveMode::weighted
               ? static_cast<double>(alpha_) * gamma_ *
                     static_cast<double>(comp_.links.size())
               : 0.0;
  }

  std::size_t integer_count() const { return comp_.groups.size(); }

  long long objective(const std::vector<int>& p) const {
    const auto cov = coverage(p);
    long long total = std::accumulate(p.begin(), p.end(), 0LL);
    if (mode_ == ObjectiveMode::weighted) {
      for (int v : cov) total += static_cast<long long>(alpha_) * (gamma_ - std::min(gamma_, v));
    }
    return total;
  }

  // Rounds an LP point up to an integer feasible placement, then drops
  // monitors that no link needs, least LP support first.
  std::vector<int> round(const Eigen::VectorXd& y) const {
    const std::size_t n = comp_.groups.size();
    std::vector<int> p(n);
    for (std::size_t l = 0; l < n; ++l) {
      const double v = std::ceil(y(static_cast<Eigen::Index>(l)) - 1e-7);
      p[l] = std::clamp(static_cast<int>(v), 0, comp_.cap[l]);
    }
    auto cov = coverage(p);
    if (mode_ == ObjectiveMode::lexicographic) {
      // Tolerance slips can leave a link short; top it up in index order.
      for (std::size_t e = 0; e < comp_.links.size(); ++e) {
        for (std::size_t l = 0; l < n && cov[e] < comp_.need[e]; ++l) {
          const auto& ls = comp_.group_links[l];
          if (std::find(ls.begin(), ls.end(), e) == ls.end()) continue;
          while (p[l] < comp_.cap[l] && cov[e] < comp_.need[e]) {
            ++p[l];
            for (std::size_t f : ls) ++cov[f];
          }
        }
      }
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) {
                       return y(static_cast<Eigen::Index>(a)) <
                              y(static_cast<Eigen::Index>(b));
                     });
    for (std::size_t l : order) {
      while (p[l] > 0 && removable(l, cov)) {
        --p[l];
        for (std::size_t f : comp_.group_links[l]) --cov[f];
      }
    }
    return p;
  }

 private:
  std::vector<int> coverage(const std::vector<int>& p) const {
    std::vector<int> cov(comp_.links.size(), 0);
    for (std::size_t l = 0; l < p.size(); ++l) {
      for (std::size_t e : comp_.group_links[l]) cov[e] += p[l];
    }
    return cov;
  }

  bool removable(std::size_t l, const std::vector<int>& cov) const {
    for (std::size_t e : comp_.group_links[l]) {
      const int floor = mode_ == ObjectiveMode::lexicographic ? comp_.need[e]
                                                              : gamma_;
      if (cov[e] <= floor) return false;
    }
    return true;
  }

  const Component& comp_;
  ObjectiveMode mode_;
  int gamma_;
  int alpha_;
};

class BranchAndBound {
 public:
  BranchAndBound(const Model& model, std::size_t& budget)
      : model_(model), lp_(model.relaxation()), budget_(budget) {}

  // Returns the best placement found; complete() tells whether it is proven.
  std::vector<int> run() {
    Eigen::VectorXd top = lp_.solution();
    incumbent_ = model_.round(top);
    best_ = model_.objective(incumbent_);
    if (budget_ == 0) {
      complete_ = false;
      return incumbent_;
    }
    --budget_;
    ++nodes_;
    const auto status = lp_.solve();
    if (status != Lp::Status::optimal) {
      complete_ = false;
      return incumbent_;
    }
    explore();
    return incumbent_;
  }

  bool complete() const { return complete_; }
  std::size_t nodes() const { return nodes_; }

 private:
  // Called with the LP at this node already optimal.
  void explore() {
    const double bound = lp_.objective() + model_.offset();
    if (std::ceil(bound - kIntTol) >= static_cast<double>(best_)) return;
    const Eigen::VectorXd y = lp_.solution();
    const auto rounded = model_.round(y);
    const long long value = model_.objective(rounded);
    if (value < best_) {
      best_ = value;
      incumbent_ = rounded;
      if (std::ceil(bound - kIntTol) >= static_cast<double>(best_)) return;
    }

    Eigen::Index branch = -1;
    double best_frac = 0.0;
    for (Eigen::Index j = 0;
         j < static_cast<Eigen::Index>(model_.integer_count()); ++j) {
      const double f = y(j) - std::floor(y(j));
      const double dist = std::min(f, 1.0 - f);
      if (dist > kIntTol && dist > best_frac + 1e-12) {
        best_frac = dist;
        branch = j;
      }
    }
    if (branch < 0) return;  // integral: rounding already recorded it

    const double lo = lp_.lower(branch);
    const double hi = lp_.upper(branch);
    const double v = y(branch);
    child(branch, std::ceil(v), hi);
    child(branch, lo, std::floor(v));
    lp_.set_bounds(branch, lo, hi);
  }

  void child(Eigen::Index j, double lo, double hi) {
    if (!complete_) return;
    if (budget_ == 0) {
      complete_ = false;
      return;
    }
    --budget_;
    ++nodes_;
    lp_.set_bounds(j, lo, hi);
    auto status = lp_.reoptimize();
    if (status == Lp::Status::infeasible) return;
    if (status == Lp::Status::optimal) status = lp_.solve();
    if (status != Lp::Status::optimal) {
      complete_ = false;
      return;
    }
    explore();
  }

  const Model& model_;
  Lp lp_;
  std::size_t& budget_;
  std::vector<int> incumbent_;
  long long best_ = std::numeric_limits<long long>::max();
  bool complete_ = true;
  std::size_t nodes_ = 0;
};

}  // namespace

PlacementSolution solve_exact(const CoverInstance& instance,
                              const ExactOptions& options) {
  const int gamma = instance.gamma();
  const std::size_t groups = instance.group_count();
  const std::size_t links = instance.link_count();

  std::vector<int> cap(groups);
  for (std::size_t l = 0; l < groups; ++l) {
    cap[l] = std::min(instance.group(l).count, gamma);
  }
  std::vector<int> fixed(groups, 0);
  std::vector<char> group_active(groups, 1);
  std::vector<char> link_active(links, 1);
  std::vector<int> need(links, 0);

  if (options.mode == ObjectiveMode::lexicographic) {
    // Phase one has a closed form: monitoring everything reaches the least
    // unsatisfied NPL, so each link needs min(gamma, supply). Phase two is
    // a bounded multicover over what remains after forced fixings.
    std::vector<int> supply(links, 0);
    for (std::size_t e = 0; e < links; ++e) {
      for (std::size_t l : instance.groups_on_link()[e]) supply[e] += cap[l];
      need[e] = std::min(gamma, supply[e]);
    }
    std::deque<std::size_t> queue(links);
    std::iota(queue.begin(), queue.end(), std::size_t{0});
    std::vector<char> queued(links, 1);
    auto touch = [&](std::size_t e) {
      if (!queued[e]) {
        queued[e] = 1;
        queue.push_back(e);
      }
    };
    while (!queue.empty()) {
      const std::size_t e = queue.front();
      queue.pop_front();
      queued[e] = 0;
      if (!link_active[e]) continue;
      if (need[e] <= 0) {
        link_active[e] = 0;
        // Groups that no longer serve any active link are useless.
        for (std::size_t l : instance.groups_on_link()[e]) {
          if (!group_active[l]) continue;
          bool useful = false;
          for (LinkIndex f : instance.group(l).links) {
            useful = useful || link_active[f];
          }
          if (!useful) {
            group_active[l] = 0;
            for (LinkIndex f : instance.group(l).links) {
              supply[f] -= cap[l];
              touch(f);
            }
          }
        }
        continue;
      }
      if (supply[e] > need[e]) continue;
      // Every usable lightpath on e must be monitored.
      for (std::size_t l : instance.groups_on_link()[e]) {
        if (!group_active[l]) continue;
        group_active[l] = 0;
        fixed[l] = cap[l];
        for (LinkIndex f : instance.group(l).links) {
          need[f] -= cap[l];
          supply[f] -= cap[l];
          touch(f);
        }
      }
    }
  }

  auto comps = split(instance, group_active, link_active, cap, need);
  std::size_t budget = options.node_budget;
  bool complete = true;
  std::size_t nodes = 0;
  for (const Component& comp : comps) {
    Model model(comp, options.mode, gamma, instance.alpha());
    BranchAndBound search(model, budget);
    const auto p = search.run();
    complete = complete && search.complete();
    nodes += search.nodes();
    for (std::size_t l = 0; l < comp.groups.size(); ++l) {
      fixed[comp.groups[l]] = p[l];
    }
  }

  Eigen::VectorXi p(static_cast<Eigen::Index>(groups));
  for (std::size_t l = 0; l < groups; ++l) {
    p(static_cast<Eigen::Index>(l)) = fixed[l];
  }
  PlacementSolution solution = evaluate(instance, std::move(p), complete);
  solution.nodes = nodes;
  return solution;
}

}  // namespace ppmplan
