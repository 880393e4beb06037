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

#ifndef CASEMIX_TESTS_SUPPORT_ORACLES_HPP_
#define CASEMIX_TESTS_SUPPORT_ORACLES_HPP_

#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "casemix/model/instance.hpp"

namespace casemix::testing {

// Rows of A x <= b over x >= 0.
struct SmallPolytope {
  std::vector<std::vector<double>> a;
  std::vector<double> b;
};

inline std::optional<std::vector<double>> SolveSquare(std::vector<std::vector<double>> m,
                                                      std::vector<double> r) {
  const std::size_t n = r.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t i = c + 1; i < n; ++i) {
      if (std::abs(m[i][c]) > std::abs(m[piv][c])) piv = i;
    }
    if (std::abs(m[piv][c]) < 1e-12) return std::nullopt;
    std::swap(m[piv], m[c]);
    std::swap(r[piv], r[c]);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c) continue;
      const double f = m[i][c] / m[c][c];
      for (std::size_t j = c; j < n; ++j) m[i][j] -= f * m[c][j];
      r[i] -= f * r[c];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = r[i] / m[i][i];
  return x;
}

// Every vertex of a bounded polytope in a few dimensions, by enumerating all
// choices of d tight constraints.
inline std::vector<std::vector<double>> Vertices(const SmallPolytope& p, std::size_t dim) {
  std::vector<std::vector<double>> rows = p.a;
  std::vector<double> rhs = p.b;
  for (std::size_t j = 0; j < dim; ++j) {
    std::vector<double> e(dim, 0.0);
    e[j] = -1.0;
    rows.push_back(e);
    rhs.push_back(0.0);
  }
  std::vector<std::vector<double>> out;
  const std::size_t m = rows.size();
  std::vector<std::size_t> pick(dim);
  for (std::size_t i = 0; i < dim; ++i) pick[i] = i;
  if (m < dim) return out;
  while (true) {
    std::vector<std::vector<double>> sub;
    std::vector<double> r;
    for (std::size_t i : pick) {
      sub.push_back(rows[i]);
      r.push_back(rhs[i]);
    }
    if (auto x = SolveSquare(sub, r)) {
      bool ok = true;
      for (std::size_t i = 0; i < m && ok; ++i) {
        double lhs = 0.0;
        for (std::size_t j = 0; j < dim; ++j) lhs += rows[i][j] * (*x)[j];
        ok = lhs <= rhs[i] + 1e-9 * (1.0 + std::abs(rhs[i]));
      }
      if (ok) out.push_back(*x);
    }
    std::size_t k = dim;
    while (k > 0 && pick[k - 1] == m - dim + k - 1) --k;
    if (k == 0) break;
    ++pick[k - 1];
    for (std::size_t i = k; i < dim; ++i) pick[i] = pick[i - 1] + 1;
  }
  return out;
}

inline double MaxLinear(const SmallPolytope& p, const std::vector<double>& c) {
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& v : Vertices(p, c.size())) {
    double z = 0.0;
    for (std::size_t j = 0; j < c.size(); ++j) z += c[j] * v[j];
    best = std::max(best, z);
  }
  return best;
}

// Capacity rows in group space for instances where every group has one
// subtype and every activity exactly one eligible resource.
inline SmallPolytope GroupSpace(const model::HospitalInstance& inst) {
  SmallPolytope p;
  for (std::size_t r = 0; r < inst.resources.size(); ++r) {
    std::vector<double> row(inst.groups.size(), 0.0);
    for (std::size_t g = 0; g < inst.groups.size(); ++g) {
      for (const auto& a : inst.groups[g].subtypes.front().activities) {
        if (a.eligible_resources.front() == inst.resources[r].id) row[g] += a.duration_hours;
      }
    }
    p.a.push_back(row);
    p.b.push_back(inst.Availability(static_cast<int>(r)));
  }
  return p;
}

}  // namespace casemix::testing

#endif  // CASEMIX_TESTS_SUPPORT_ORACLES_HPP_
