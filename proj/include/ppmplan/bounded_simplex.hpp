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

#ifndef PPMPLAN_BOUNDED_SIMPLEX_HPP_
#define PPMPLAN_BOUNDED_SIMPLEX_HPP_

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace ppmplan {

// Dense tableau simplex for
//
//   min c'y   s.t.   A y <= b,   lower <= y <= upper,
//
// with finite structural bounds. Each row gets a slack s >= 0, and the
// tableau T = B^-1 [A I] is kept explicitly, which suits the small, dense
// relaxations solved inside branch-and-bound. After solve() reaches an
// optimum, bounds can be changed with set_bounds() and the basis repaired
// with reoptimize() (dual simplex), since bound changes keep the basis
// dual feasible.
template <typename Scalar = double>
class BoundedSimplex {
 public:
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  using Index = Eigen::Index;

  enum class Status { optimal, infeasible, unbounded, iteration_limit };

  // The starting point puts y_j at its upper bound where at_upper[j] and at
  // its lower bound otherwise; it must satisfy A y <= b.
  BoundedSimplex(const Matrix& a, const Vector& b, const Vector& c,
                 const Vector& lower, const Vector& upper,
                 const std::vector<bool>& at_upper = {})
      : a_(a),
        b_(b),
        n_(a.cols()),
        m_(a.rows()),
        lower_(n_ + m_),
        upper_(n_ + m_),
        cost_(Vector::Zero(n_ + m_)),
        tableau_(m_, n_ + m_),
        head_(static_cast<std::size_t>(m_)),
        row_of_(static_cast<std::size_t>(n_ + m_), -1),
        state_(static_cast<std::size_t>(n_ + m_), VarState::at_lower) {
    if (b.size() != m_ || c.size() != n_ || lower.size() != n_ ||
        upper.size() != n_) {
      throw std::invalid_argument("BoundedSimplex: dimension mismatch");
    }
    lower_.head(n_) = lower;
    upper_.head(n_) = upper;
    lower_.tail(m_).setZero();
    upper_.tail(m_).setConstant(kInf);
    cost_.head(n_) = c;
    for (Index j = 0; j < n_; ++j) {
      if (!(lower(j) <= upper(j))) {
        throw std::invalid_argument("BoundedSimplex: empty bound range");
      }
      if (!at_upper.empty() && at_upper[static_cast<std::size_t>(j)]) {
        state_[static_cast<std::size_t>(j)] = VarState::at_upper;
      }
    }
    tableau_.leftCols(n_) = a_;
    tableau_.rightCols(m_).setIdentity();
    for (Index i = 0; i < m_; ++i) {
      head_[static_cast<std::size_t>(i)] = n_ + i;
      row_of_[static_cast<std::size_t>(n_ + i)] = i;
      state_[static_cast<std::size_t>(n_ + i)] = VarState::basic;
    }
    recompute_values();
    recompute_reduced_costs();
    if ((beta_.array() < -kFeasTol).any()) {
      throw std::invalid_argument("BoundedSimplex: start point infeasible");
    }
  }

  Index rows() const { return m_; }
  Index cols() const { return n_; }
  long iterations() const { return iterations_; }
  void set_iteration_limit(long limit) { iteration_limit_ = limit; }

  // Primal simplex from the current (primal feasible) basis.
  Status solve() {
    long degenerate = 0;
    while (true) {
      if (iterations_ >= iteration_limit_) return Status::iteration_limit;
      const bool bland = degenerate > kBlandAfter;
      Index enter = -1;
      Scalar best = 0;
      for (Index j = 0; j < n_ + m_; ++j) {
        const VarState s = state_[static_cast<std::size_t>(j)];
        if (s == VarState::basic || lower_(j) == upper_(j)) continue;
        const Scalar d = reduced_(j);
        const Scalar gain = s == VarState::at_lower ? -d : d;
        if (gain > kOptTol && (bland ? enter < 0 : gain > best)) {
          enter = j;
          best = gain;
        }
      }
      if (enter < 0) return Status::optimal;

      const bool increase =
          state_[static_cast<std::size_t>(enter)] == VarState::at_lower;
      const Scalar dir = increase ? Scalar(1) : Scalar(-1);
      Scalar step = upper_(enter) - lower_(enter);
      Index leave = -1;
      Scalar leave_mag = 0;
      for (Index i = 0; i < m_; ++i) {
        const Scalar g = dir * tableau_(i, enter);
        const Index h = head_[static_cast<std::size_t>(i)];
        Scalar limit;
        if (g > kPivotTol) {
          limit = (beta_(i) - lower_(h)) / g;
        } else if (g < -kPivotTol && upper_(h) < kInf) {
          limit = (upper_(h) - beta_(i)) / (-g);
        } else {
          continue;
        }
        limit = std::max(limit, Scalar(0));
        const Scalar mag = std::abs(g);
        if (limit < step - kFeasTol ||
            (limit <= step + kFeasTol && leave >= 0 &&
             (bland ? h < head_[static_cast<std::size_t>(leave)]
                    : mag > leave_mag))) {
          step = limit;
          leave = i;
          leave_mag = mag;
        }
      }
      if (leave < 0 && !(step < kInf)) return Status::unbounded;
      ++iterations_;
      degenerate = step <= kFeasTol ? degenerate + 1 : 0;
      if (leave < 0) {
        // Bound flip: no basis change.
        beta_ -= dir * step * tableau_.col(enter);
        state_[static_cast<std::size_t>(enter)] =
            increase ? VarState::at_upper : VarState::at_lower;
        continue;
      }
      const Index out = head_[static_cast<std::size_t>(leave)];
      const bool out_to_lower = dir * tableau_(leave, enter) > 0;
      const Scalar entering_value =
          (increase ? lower_(enter) : upper_(enter)) + dir * step;
      beta_ -= dir * step * tableau_.col(enter);
      pivot(leave, enter);
      beta_(leave) = entering_value;
      state_[static_cast<std::size_t>(out)] =
          out_to_lower ? VarState::at_lower : VarState::at_upper;
      after_pivot();
    }
  }

  // Changes the bounds of structural variable j. A nonbasic variable moves
  // with its bound; a basic one may become infeasible until reoptimize().
  void set_bounds(Index j, Scalar lo, Scalar hi) {
    if (j < 0 || j >= n_ || !(lo <= hi)) {
      throw std::invalid_argument("BoundedSimplex: bad bound change");
    }
    VarState& s = state_[static_cast<std::size_t>(j)];
    if (s != VarState::basic) {
      // Rest on the bound the reduced cost favours so the basis stays dual
      // feasible; fixed variables may have drifted to the wrong side.
      const Scalar old = s == VarState::at_lower ? lower_(j) : upper_(j);
      s = reduced_(j) < 0 && hi < kInf ? VarState::at_upper
                                        : VarState::at_lower;
      const Scalar now = s == VarState::at_lower ? lo : hi;
      if (now != old) beta_ -= (now - old) * tableau_.col(j);
    }
    lower_(j) = lo;
    upper_(j) = hi;
  }

  Scalar lower(Index j) const { return lower_(j); }
  Scalar upper(Index j) const { return upper_(j); }

  // Dual simplex from a dual feasible basis.
  Status reoptimize() {
    long stalled = 0;
    while (true) {
      if (iterations_ >= iteration_limit_) return Status::iteration_limit;
      const bool bland = stalled > kBlandAfter;
      Index leave = -1;
      Scalar worst = 0;
      Scalar excess = 0;
      for (Index i = 0; i < m_; ++i) {
        const Index h = head_[static_cast<std::size_t>(i)];
        Scalar viol = 0;
        if (beta_(i) < lower_(h) - kFeasTol) viol = beta_(i) - lower_(h);
        if (beta_(i) > upper_(h) + kFeasTol) viol = beta_(i) - upper_(h);
        if (viol == 0) continue;
        if (bland ? (leave < 0 || h < head_[static_cast<std::size_t>(leave)])
                  : std::abs(viol) > worst) {
          leave = i;
          worst = std::abs(viol);
          excess = viol;
        }
      }
      if (leave < 0) return Status::optimal;

      Index enter = -1;
      Scalar best_ratio = kInf;
      Scalar best_mag = 0;
      for (Index j = 0; j < n_ + m_; ++j) {
        const VarState s = state_[static_cast<std::size_t>(j)];
        if (s == VarState::basic || lower_(j) == upper_(j)) continue;
        const Scalar t = tableau_(leave, j);
        // The basic value moves by -t * delta_j; it must head to its bound.
        const bool usable =
            excess < 0 ? (s == VarState::at_lower ? t < -kPivotTol
                                                  : t > kPivotTol)
                       : (s == VarState::at_lower ? t > kPivotTol
                                                  : t < -kPivotTol);
        if (!usable) continue;
        const Scalar ratio = std::abs(reduced_(j)) / std::abs(t);
        const Scalar mag = std::abs(t);
        if (ratio < best_ratio - kOptTol ||
            (ratio <= best_ratio + kOptTol &&
             (bland ? j < enter : mag > best_mag))) {
          enter = j;
          best_ratio = ratio;
          best_mag = mag;
        }
      }
      if (enter < 0) return Status::infeasible;

      ++iterations_;
      stalled = best_ratio <= kOptTol ? stalled + 1 : 0;
      const Index out = head_[static_cast<std::size_t>(leave)];
      const Scalar delta = excess / tableau_(leave, enter);
      const VarState s = state_[static_cast<std::size_t>(enter)];
      const Scalar entering_value =
          (s == VarState::at_lower ? lower_(enter) : upper_(enter)) + delta;
      beta_ -= delta * tableau_.col(enter);
      pivot(leave, enter);
      beta_(leave) = entering_value;
      state_[static_cast<std::size_t>(out)] =
          excess < 0 ? VarState::at_lower : VarState::at_upper;
      after_pivot();
    }
  }

  Vector solution() const {
    Vector y(n_);
    for (Index j = 0; j < n_; ++j) y(j) = value(j);
    return y;
  }

  Scalar objective() const { return cost_.head(n_).dot(solution()); }

 private:
  enum class VarState { basic, at_lower, at_upper };

  static constexpr Scalar kInf = std::numeric_limits<Scalar>::infinity();
  static constexpr Scalar kFeasTol = Scalar(1e-9);
  static constexpr Scalar kOptTol = Scalar(1e-9);
  static constexpr Scalar kPivotTol = Scalar(1e-9);
  static constexpr long kBlandAfter = 200;
  static constexpr long kRefactorEvery = 100;

  Scalar value(Index j) const {
    switch (state_[static_cast<std::size_t>(j)]) {
      case VarState::at_lower:
        return lower_(j);
      case VarState::at_upper:
        return upper_(j);
      case VarState::basic:
        break;
    }
    return beta_(row_of_[static_cast<std::size_t>(j)]);
  }

  Scalar nonbasic_value(Index j) const {
    return state_[static_cast<std::size_t>(j)] == VarState::at_upper
               ? upper_(j)
               : lower_(j);
  }

  void pivot(Index r, Index j) {
    const Scalar piv = tableau_(r, j);
    tableau_.row(r) /= piv;
    Vector col = tableau_.col(j);
    col(r) = 0;
    const Eigen::Matrix<Scalar, 1, Eigen::Dynamic> row = tableau_.row(r);
    tableau_.noalias() -= col * row;
    reduced_ -= reduced_(j) * row.transpose();
    reduced_(j) = 0;
    row_of_[static_cast<std::size_t>(head_[static_cast<std::size_t>(r)])] = -1;
    head_[static_cast<std::size_t>(r)] = j;
    row_of_[static_cast<std::size_t>(j)] = r;
    state_[static_cast<std::size_t>(j)] = VarState::basic;
  }

  void after_pivot() {
    if (++since_refactor_ >= kRefactorEvery) refactor();
  }

  // Rebuilds T, beta and d from the basis header to shed rounding drift.
  void refactor() {
    since_refactor_ = 0;
    Matrix basis(m_, m_);
    for (Index i = 0; i < m_; ++i) {
      const Index h = head_[static_cast<std::size_t>(i)];
      if (h < n_) {
        basis.col(i) = a_.col(h);
      } else {
        basis.col(i).setZero();
        basis(h - n_, i) = 1;
      }
    }
    Eigen::PartialPivLU<Matrix> lu(basis);
    tableau_.leftCols(n_) = lu.solve(a_);
    tableau_.rightCols(m_) = lu.inverse();
    recompute_values();
    recompute_reduced_costs();
  }

  void recompute_values() {
    Vector rhs = b_;
    for (Index j = 0; j < n_; ++j) {
      if (state_[static_cast<std::size_t>(j)] != VarState::basic) {
        rhs -= nonbasic_value(j) * a_.col(j);
      }
    }
    // Nonbasic slacks sit at zero; B^-1 is the slack block of T.
    beta_ = tableau_.rightCols(m_) * rhs;
  }

  void recompute_reduced_costs() {
    Vector basic_cost(m_);
    for (Index i = 0; i < m_; ++i) {
      basic_cost(i) = cost_(head_[static_cast<std::size_t>(i)]);
    }
    reduced_ = cost_ - tableau_.transpose() * basic_cost;
  }

  Matrix a_;
  Vector b_;
  Index n_;
  Index m_;
  Vector lower_, upper_, cost_;
  Matrix tableau_;
  Vector beta_;
  Vector reduced_;
  std::vector<Index> head_;
  std::vector<Index> row_of_;
  std::vector<VarState> state_;
  long iterations_ = 0;
  long iteration_limit_ = 1'000'000;
  long since_refactor_ = 0;
};

}  // namespace ppmplan

#endif  // PPMPLAN_BOUNDED_SIMPLEX_HPP_
