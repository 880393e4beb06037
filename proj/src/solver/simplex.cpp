// Copyright 2026 The Casemix Authors
//
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

#include "casemix/solver/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace casemix::solver {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kSingularTol = 1e-11;

double RoundToPowerOfTwo(double s) {
  if (!(s > 0.0) || !std::isfinite(s)) return 1.0;
  return std::exp2(std::round(std::log2(s)));
}

}  // namespace

RevisedSimplex::RevisedSimplex(const LpProblem& problem,
                               SimplexOptions options)
    : m_(problem.num_rows), n_(problem.num_cols), options_(options) {
  Scale(problem);
  InitialBasis();
}

void RevisedSimplex::Scale(const LpProblem& p) {
  col_start_ = p.col_start;
  row_index_ = p.row_index;
  value_ = p.value;
  row_scale_.assign(m_, 1.0);
  col_scale_.assign(n_, 1.0);

  if (options_.scale && !value_.empty()) {
    for (int pass = 0; pass < 6; ++pass) {
      std::vector<double> rmin(m_, kInf), rmax(m_, 0.0);
      for (int j = 0; j < n_; ++j) {
        for (int k = col_start_[j]; k < col_start_[j + 1]; ++k) {
          const double a = std::abs(value_[k]) * col_scale_[j];
          if (a == 0.0) continue;
          const int i = row_index_[k];
          rmin[i] = std::min(rmin[i], a);
          rmax[i] = std::max(rmax[i], a);
        }
      }
      for (int i = 0; i < m_; ++i) {
        if (rmax[i] > 0.0) row_scale_[i] = 1.0 / std::sqrt(rmin[i] * rmax[i]);
      }
      for (int j = 0; j < n_; ++j) {
        double cmin = kInf, cmax = 0.0;
        for (int k = col_start_[j]; k < col_start_[j + 1]; ++k) {
          const double a = std::abs(value_[k]) * row_scale_[row_index_[k]];
          if (a == 0.0) continue;
          cmin = std::min(cmin, a);
          cmax = std::max(cmax, a);
        }
        if (cmax > 0.0) col_scale_[j] = 1.0 / std::sqrt(cmin * cmax);
      }
    }
    for (double& s : row_scale_) s = RoundToPowerOfTwo(s);
    for (double& s : col_scale_) s = RoundToPowerOfTwo(s);
  }

  for (int j = 0; j < n_; ++j) {
    for (int k = col_start_[j]; k < col_start_[j + 1]; ++k) {
      value_[k] *= row_scale_[row_index_[k]] * col_scale_[j];
    }
  }

  const int total = n_ + m_;
  cost_.assign(total, 0.0);
  lower_.assign(total, 0.0);
  upper_.assign(total, 0.0);
  double cmax = 0.0;
  for (int j = 0; j < n_; ++j) {
    cost_[j] = p.cost[j] * col_scale_[j];
    cmax = std::max(cmax, std::abs(cost_[j]));
    lower_[j] = p.col_lower[j] / col_scale_[j];
    upper_[j] = p.col_upper[j] / col_scale_[j];
  }
  cost_scale_ = cmax > 0.0 ? RoundToPowerOfTwo(cmax) : 1.0;
  for (int j = 0; j < n_; ++j) cost_[j] /= cost_scale_;
  for (int i = 0; i < m_; ++i) {
    lower_[n_ + i] = p.row_lower[i] * row_scale_[i];
    upper_[n_ + i] = p.row_upper[i] * row_scale_[i];
  }
}

void RevisedSimplex::InitialBasis() {
  const int total = n_ + m_;
  x_.assign(total, 0.0);
  status_.assign(total, Status::kLower);
  head_.resize(m_);
  for (int j = 0; j < n_; ++j) PlaceNonbasic(j);
  for (int i = 0; i < m_; ++i) {
    head_[i] = n_ + i;
    status_[n_ + i] = Status::kBasic;
  }
  binv_.assign(static_cast<std::size_t>(m_) * m_, 0.0);
  for (int i = 0; i < m_; ++i) binv_[static_cast<std::size_t>(i) * m_ + i] = -1.0;
  pivots_since_refactor_ = 0;
}

void RevisedSimplex::PlaceNonbasic(int var) {
  const bool lo = std::isfinite(lower_[var]);
  const bool up = std::isfinite(upper_[var]);
  if (lo && up) {
    if (status_[var] == Status::kUpper && lower_[var] < upper_[var]) {
      x_[var] = upper_[var];
    } else {
      status_[var] = Status::kLower;
      x_[var] = lower_[var];
    }
  } else if (lo) {
    status_[var] = Status::kLower;
    x_[var] = lower_[var];
  } else if (up) {
    status_[var] = Status::kUpper;
    x_[var] = upper_[var];
  } else {
    status_[var] = Status::kFree;
    x_[var] = 0.0;
  }
}

void RevisedSimplex::SetColumnBounds(int col, double lower, double upper) {
  lower_[col] = lower / col_scale_[col];
  upper_[col] = upper / col_scale_[col];
  if (status_[col] != Status::kBasic) PlaceNonbasic(col);
}

double RevisedSimplex::column_lower(int col) const {
  return lower_[col] * col_scale_[col];
}

double RevisedSimplex::column_upper(int col) const {
  return upper_[col] * col_scale_[col];
}

std::vector<double> RevisedSimplex::ColumnValues() const {
  std::vector<double> out(n_);
  for (int j = 0; j < n_; ++j) out[j] = x_[j] * col_scale_[j];
  return out;
}

double RevisedSimplex::Objective() const {
  double sum = 0.0;
  for (int j = 0; j < n_; ++j) sum += cost_[j] * x_[j];
  return sum * cost_scale_;
}

bool RevisedSimplex::Reinvert() {
  const std::size_t m = m_;
  for (int attempt = 0; attempt < 3; ++attempt) {
    std::vector<double> mat(m * m, 0.0);
    std::vector<double> eta(m * m, 0.0);
    for (std::size_t i = 0; i < m; ++i) eta[i * m + i] = 1.0;
    for (std::size_t c = 0; c < m; ++c) {
      const int var = head_[c];
      if (var >= n_) {
        mat[(var - n_) * m + c] = -1.0;
      } else {
        for (int k = col_start_[var]; k < col_start_[var + 1]; ++k) {
          mat[row_index_[k] * m + c] = value_[k];
        }
      }
    }
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::stable_partition(order.begin(), order.end(),
                          [&](std::size_t c) { return head_[c] >= n_; });

    std::vector<int> row_of_col(m, -1);
    std::vector<char> used(m, 0);
    std::vector<std::size_t> defective;
    std::vector<std::size_t> nz_mat, nz_eta;
    for (std::size_t c : order) {
      std::size_t p = m;
      double best = kSingularTol;
      for (std::size_t r = 0; r < m; ++r) {
        if (used[r]) continue;
        const double a = std::abs(mat[r * m + c]);
        if (a > best) {
          best = a;
          p = r;
        }
      }
      if (p == m) {
        defective.push_back(c);
        continue;
      }
      used[p] = 1;
      row_of_col[c] = static_cast<int>(p);
      const double inv = 1.0 / mat[p * m + c];
      nz_mat.clear();
      nz_eta.clear();
      for (std::size_t k = 0; k < m; ++k) {
        if (mat[p * m + k] != 0.0) {
          mat[p * m + k] *= inv;
          nz_mat.push_back(k);
        }
        if (eta[p * m + k] != 0.0) {
          eta[p * m + k] *= inv;
          nz_eta.push_back(k);
        }
      }
      for (std::size_t r = 0; r < m; ++r) {
        if (r == p) continue;
        const double f = mat[r * m + c];
        if (f == 0.0) continue;
        for (std::size_t k : nz_mat) mat[r * m + k] -= f * mat[p * m + k];
        for (std::size_t k : nz_eta) eta[r * m + k] -= f * eta[p * m + k];
        mat[r * m + c] = 0.0;
      }
    }

    if (defective.empty()) {
      for (std::size_t c = 0; c < m; ++c) {
        const std::size_t r = row_of_col[c];
        for (std::size_t i = 0; i < m; ++i) binv_[i * m + c] = eta[r * m + i];
      }
      pivots_since_refactor_ = 0;
      return true;
    }

    // Swap dependent columns for the logicals of the uncovered rows.
    std::size_t next = 0;
    for (std::size_t c : defective) {
      while (next < m && used[next]) ++next;
      if (next == m) return false;
      const int old = head_[c];
      const int logical = n_ + static_cast<int>(next);
      used[next] = 1;
      head_[c] = logical;
      status_[logical] = Status::kBasic;
      status_[old] = std::abs(x_[old] - upper_[old]) < std::abs(x_[old] - lower_[old])
                         ? Status::kUpper
                         : Status::kLower;
      PlaceNonbasic(old);
    }
  }
  return false;
}

void RevisedSimplex::ComputeBasicValues() {
  const std::size_t m = m_;
  std::vector<double> r(m, 0.0);
  for (int j = 0; j < n_ + m_; ++j) {
    if (status_[j] == Status::kBasic || x_[j] == 0.0) continue;
    if (j >= n_) {
      r[j - n_] += x_[j];
    } else {
      for (int k = col_start_[j]; k < col_start_[j + 1]; ++k) {
        r[row_index_[k]] -= value_[k] * x_[j];
      }
    }
  }
  for (std::size_t k = 0; k < m; ++k) {
    double sum = 0.0;
    for (std::size_t i = 0; i < m; ++i) sum += binv_[i * m + k] * r[i];
    x_[head_[k]] = sum;
  }
}

void RevisedSimplex::Ftran(int col, std::vector<double>& out) const {
  const std::size_t m = m_;
  out.assign(m, 0.0);
  if (col >= n_) {
    const std::size_t i = col - n_;
    for (std::size_t k = 0; k < m; ++k) out[k] = -binv_[i * m + k];
    return;
  }
  for (int e = col_start_[col]; e < col_start_[col + 1]; ++e) {
    const double v = value_[e];
    const double* b = &binv_[static_cast<std::size_t>(row_index_[e]) * m];
    for (std::size_t k = 0; k < m; ++k) out[k] += v * b[k];
  }
}

void RevisedSimplex::Btran(const std::vector<double>& cb,
                           std::vector<double>& y) const {
  const std::size_t m = m_;
  y.assign(m, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    const double* b = &binv_[i * m];
    double sum = 0.0;
    for (std::size_t k = 0; k < m; ++k) sum += cb[k] * b[k];
    y[i] = sum;
  }
}

double RevisedSimplex::ColumnDot(int col, const std::vector<double>& y) const {
  if (col >= n_) return -y[col - n_];
  double sum = 0.0;
  for (int e = col_start_[col]; e < col_start_[col + 1]; ++e) {
    sum += value_[e] * y[row_index_[e]];
  }
  return sum;
}

void RevisedSimplex::Pivot(int row, const std::vector<double>& alpha) {
  const std::size_t m = m_;
  const std::size_t r = row;
  const double inv = 1.0 / alpha[r];
  for (std::size_t i = 0; i < m; ++i) {
    double* b = &binv_[i * m];
    if (b[r] == 0.0) continue;
    const double piv = b[r] * inv;
    for (std::size_t k = 0; k < m; ++k) b[k] -= alpha[k] * piv;
    b[r] = piv;
  }
  ++pivots_since_refactor_;
}

SimplexResult RevisedSimplex::Solve() {
  if (!Reinvert()) return SimplexResult::kNumericalFailure;
  ComputeBasicValues();

  const double ptol = options_.primal_tol;
  const double dtol = options_.dual_tol;
  const std::size_t m = m_;
  const int total = n_ + m_;
  std::vector<double> cb(m), y(m), alpha(m);
  int stalled = 0;
  const long start = iterations_;

  for (;;) {
    if (iterations_ - start >= options_.iteration_limit) {
      return SimplexResult::kIterationLimit;
    }
    if (pivots_since_refactor_ >= options_.refactor_interval) {
      if (!Reinvert()) return SimplexResult::kNumericalFailure;
      ComputeBasicValues();
    }

    bool phase1 = false;
    for (std::size_t k = 0; k < m; ++k) {
      const int v = head_[k];
      if (x_[v] < lower_[v] - ptol) {
        cb[k] = -1.0;
        phase1 = true;
      } else if (x_[v] > upper_[v] + ptol) {
        cb[k] = 1.0;
        phase1 = true;
      } else {
        cb[k] = 0.0;
      }
    }
    if (!phase1) {
      for (std::size_t k = 0; k < m; ++k) cb[k] = cost_[head_[k]];
    }
    Btran(cb, y);

    const bool bland = stalled > options_.bland_after;
    int q = -1;
    int dir = 0;
    double best = 0.0;
    for (int j = 0; j < total; ++j) {
      const Status s = status_[j];
      if (s == Status::kBasic || lower_[j] == upper_[j]) continue;
      const double d = (phase1 ? 0.0 : cost_[j]) - ColumnDot(j, y);
      int sj = 0;
      if ((s == Status::kLower || s == Status::kFree) && d < -dtol) {
        sj = 1;
      } else if ((s == Status::kUpper || s == Status::kFree) && d > dtol) {
        sj = -1;
      } else {
        continue;
      }
      const double score = std::abs(d);
      if (bland) {
        q = j;
        dir = sj;
        break;
      }
      if (score > best) {
        best = score;
        q = j;
        dir = sj;
      }
    }

    if (q < 0) {
      if (pivots_since_refactor_ > 0) {
        if (!Reinvert()) return SimplexResult::kNumericalFailure;
        ComputeBasicValues();
        continue;
      }
      return phase1 ? SimplexResult::kInfeasible : SimplexResult::kOptimal;
    }

    Ftran(q, alpha);

    // Harris pass 1: largest step keeping every basic variable within its
    // tolerance-widened bound.
    auto target = [&](std::size_t k, double rate, double& bound) {
      const int v = head_[k];
      if (rate < 0.0) {
        if (phase1 && x_[v] > upper_[v] + ptol) {
          bound = upper_[v];
        } else if (x_[v] < lower_[v] - ptol) {
          return false;
        } else {
          bound = lower_[v];
        }
      } else {
        if (phase1 && x_[v] < lower_[v] - ptol) {
          bound = lower_[v];
        } else if (x_[v] > upper_[v] + ptol) {
          return false;
        } else {
          bound = upper_[v];
        }
      }
      return std::isfinite(bound);
    };

    double theta_max = kInf;
    for (std::size_t k = 0; k < m; ++k) {
      if (std::abs(alpha[k]) <= options_.pivot_tol) continue;
      const double rate = -dir * alpha[k];
      double bound;
      if (!target(k, rate, bound)) continue;
      const double ratio = (std::abs(x_[head_[k]] - bound) + ptol) / std::abs(rate);
      theta_max = std::min(theta_max, ratio);
    }

    int leave = -1;
    double theta = 0.0;
    double leave_bound = 0.0;
    double best_alpha = 0.0;
    if (std::isfinite(theta_max)) {
      for (std::size_t k = 0; k < m; ++k) {
        if (std::abs(alpha[k]) <= options_.pivot_tol) continue;
        const double rate = -dir * alpha[k];
        double bound;
        if (!target(k, rate, bound)) continue;
        const double ratio = std::max(0.0, (x_[head_[k]] - bound) / -rate);
        if (ratio > theta_max) continue;
        bool take;
        if (bland) {
          take = leave < 0 || head_[k] < head_[leave];
        } else {
          take = std::abs(alpha[k]) > best_alpha;
        }
        if (take) {
          leave = static_cast<int>(k);
          best_alpha = std::abs(alpha[k]);
          theta = ratio;
          leave_bound = bound;
        }
      }
    }

    const double range = upper_[q] - lower_[q];
    const bool flip = std::isfinite(range) && (leave < 0 || range <= theta);
    if (leave < 0 && !flip) {
      return phase1 ? SimplexResult::kNumericalFailure
                    : SimplexResult::kUnbounded;
    }
    if (flip) theta = range;

    for (std::size_t k = 0; k < m; ++k) {
      if (alpha[k] != 0.0) x_[head_[k]] -= dir * alpha[k] * theta;
    }
    x_[q] += dir * theta;
    ++iterations_;
    stalled = theta > 1e-12 ? 0 : stalled + 1;

    if (flip) {
      status_[q] = dir > 0 ? Status::kUpper : Status::kLower;
      x_[q] = dir > 0 ? upper_[q] : lower_[q];
      continue;
    }

    const int out = head_[leave];
    x_[out] = leave_bound;
    status_[out] = (leave_bound == lower_[out]) ? Status::kLower : Status::kUpper;
    head_[leave] = q;
    status_[q] = Status::kBasic;
    Pivot(leave, alpha);
  }
}

}  // namespace casemix::solver
