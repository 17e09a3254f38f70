// Copyright 2026 The Gamescape Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef GAMESCAPE_LP_HPP_
#define GAMESCAPE_LP_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "gamescape/matrix.hpp"

namespace gamescape {

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  double objective = 0.0;
  std::vector<double> x;
};

// Dense two-phase primal simplex for
//     max cᵀx   s.t.  Ax ≤ b,  x ≥ 0.
//
// Reduced costs are recomputed from the cost vector every iteration instead
// of being carried in the tableau, which avoids drift in the objective row.
// Problems here have at most a few hundred rows, so the O(m·n) pricing step
// is cheap.
class SimplexSolver {
 public:
  SimplexSolver(const Matrix& a, const std::vector<double>& b, const std::vector<double>& c)
      : m_(a.rows()), n_(a.cols()) {
    detail::require(b.size() == m_ && c.size() == n_, "solve_lp: shape mismatch");
    num_artificial_ = 0;
    for (std::size_t i = 0; i < m_; ++i)
      if (b[i] < 0.0) ++num_artificial_;
    cols_ = n_ + m_ + num_artificial_;
    tableau_ = Matrix(m_, cols_ + 1);
    basis_.resize(m_);
    cost_ = c;

    std::size_t art = n_ + m_;
    for (std::size_t i = 0; i < m_; ++i) {
      const double sign = b[i] < 0.0 ? -1.0 : 1.0;
      for (std::size_t j = 0; j < n_; ++j) tableau_(i, j) = sign * a(i, j);
      tableau_(i, n_ + i) = sign;  // slack
      tableau_(i, cols_) = sign * b[i];
      if (b[i] < 0.0) {
        tableau_(i, art) = 1.0;
        basis_[i] = art++;
      } else {
        basis_[i] = n_ + i;
      }
    }
  }

  LpSolution solve() {
    LpSolution out;
    if (num_artificial_ > 0) {
      std::vector<double> phase1(cols_, 0.0);
      for (std::size_t j = n_ + m_; j < cols_; ++j) phase1[j] = -1.0;
      run(phase1, /*allow_artificial=*/true);
      double infeasibility = 0.0;
      for (std::size_t i = 0; i < m_; ++i)
        if (basis_[i] >= n_ + m_) infeasibility += tableau_(i, cols_);
      if (infeasibility > 1e-8) {
        out.status = LpStatus::kInfeasible;
        return out;
      }
      drive_out_artificials();
    }
    std::vector<double> phase2(cols_, 0.0);
    for (std::size_t j = 0; j < n_; ++j) phase2[j] = cost_[j];
    if (!run(phase2, /*allow_artificial=*/false)) {
      out.status = LpStatus::kUnbounded;
      return out;
    }
    out.status = LpStatus::kOptimal;
    out.x.assign(n_, 0.0);
    for (std::size_t i = 0; i < m_; ++i)
      if (basis_[i] < n_) out.x[basis_[i]] = std::max(tableau_(i, cols_), 0.0);
    out.objective = dot(cost_, out.x);
    return out;
  }

 private:
  static constexpr double kEps = 1e-9;

  // Returns false on unboundedness. Pricing is Dantzig (most positive
  // reduced cost) with a largest-pivot tie-break in the ratio test; after a
  // long streak of degenerate pivots it switches to Bland's rule, which
  // cannot cycle.
  bool run(const std::vector<double>& c, bool allow_artificial) {
    const std::size_t scan = allow_artificial ? cols_ : n_ + m_;
    const long iteration_cap = 50000 + 1000 * static_cast<long>(m_ + cols_);
    bool bland = false;
    long degenerate_streak = 0;
    for (long iter = 0; iter < iteration_cap; ++iter) {
      // Price: d_j = c_j − c_Bᵀ B⁻¹ a_j.
      std::size_t enter = scan;
      double best_d = kEps;
      for (std::size_t j = 0; j < scan; ++j) {
        if (is_basic(j)) continue;
        double d = c[j];
        for (std::size_t i = 0; i < m_; ++i) {
          const double cb = c[basis_[i]];
          if (cb != 0.0) d -= cb * tableau_(i, j);
        }
        if (d > best_d) {
          enter = j;
          if (bland) break;  // lowest improving index
          best_d = d;
        }
      }
      if (enter == scan) return true;  // optimal

      std::size_t leave = m_;
      double best_ratio = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < m_; ++i) {
        const double coef = tableau_(i, enter);
        if (coef <= kEps) continue;
        const double ratio = tableau_(i, cols_) / coef;
        if (leave == m_ || ratio < best_ratio - 1e-12) {
          best_ratio = ratio;
          leave = i;
        } else if (ratio < best_ratio + 1e-12) {
          // Tied: prefer the smallest basis index under Bland, otherwise the
          // numerically strongest pivot.
          const bool take = bland ? basis_[i] < basis_[leave]
                                  : coef > tableau_(leave, enter);
          if (take) {
            best_ratio = std::min(best_ratio, ratio);
            leave = i;
          }
        }
      }
      if (leave == m_) return false;  // unbounded

      if (best_ratio <= 1e-12) {
        if (++degenerate_streak > 200) bland = true;
      } else {
        degenerate_streak = 0;
      }
      pivot(leave, enter);
    }
    throw std::runtime_error("simplex: iteration limit exceeded");
  }

  bool is_basic(std::size_t j) const {
    for (std::size_t i = 0; i < m_; ++i)
      if (basis_[i] == j) return true;
    return false;
  }

  void pivot(std::size_t row, std::size_t col) {
    const double inv = 1.0 / tableau_(row, col);
    for (std::size_t j = 0; j <= cols_; ++j) tableau_(row, j) *= inv;
    tableau_(row, col) = 1.0;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == row) continue;
      const double f = tableau_(i, col);
      if (f == 0.0) continue;
      for (std::size_t j = 0; j <= cols_; ++j) tableau_(i, j) -= f * tableau_(row, j);
      tableau_(i, col) = 0.0;
    }
    basis_[row] = col;
  }

  // After phase one, pivot any artificial still basic (at value zero) onto a
  // real column; rows with no such column are redundant and stay put.
  void drive_out_artificials() {
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < n_ + m_) continue;
      for (std::size_t j = 0; j < n_ + m_; ++j) {
        if (std::fabs(tableau_(i, j)) > 1e-7 && !is_basic(j)) {
          pivot(i, j);
          break;
        }
      }
    }
  }

  std::size_t m_, n_, cols_, num_artificial_;
  Matrix tableau_;
  std::vector<std::size_t> basis_;
  std::vector<double> cost_;
};

inline LpSolution solve_lp(const Matrix& a, const std::vector<double>& b,
                           const std::vector<double>& c) {
  return SimplexSolver(a, b, c).solve();
}

}  // namespace gamescape

#endif  // GAMESCAPE_LP_HPP_
