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

#include "casemix/utility/plf.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "casemix/error.hpp"

namespace casemix::utility {

PiecewiseLinearUtility::PiecewiseLinearUtility(double anchor,
                                               std::vector<double> breakpoints,
                                               std::vector<double> slopes,
                                               double domain_max)
    : anchor_(anchor),
      breakpoints_(std::move(breakpoints)),
      slopes_(std::move(slopes)),
      domain_max_(domain_max) {
  if (!std::isfinite(domain_max_) || domain_max_ <= 0.0) {
    throw ValidationError("domain_max must be positive and finite",
                          "/domain_max");
  }
  if (!std::isfinite(anchor_)) {
    throw ValidationError("anchor must be finite", "/anchor");
  }
  if (slopes_.size() != breakpoints_.size() + 1) {
    throw ValidationError("expected " + std::to_string(breakpoints_.size() + 1) +
                              " slopes, got " + std::to_string(slopes_.size()),
                          "/slopes");
  }
  const double tol = 1e-9 * domain_max_;
  for (std::size_t i = 0; i < breakpoints_.size(); ++i) {
    const std::string path = "/breakpoints/" + std::to_string(i);
    double& b = breakpoints_[i];
    if (!std::isfinite(b) || b < -tol || b > domain_max_ + tol) {
      throw ValidationError("breakpoint outside [0, domain_max]", path);
    }
    b = std::clamp(b, 0.0, domain_max_);
    if (i > 0 && b < breakpoints_[i - 1]) {
      throw ValidationError("breakpoints must be nondecreasing", path);
    }
    if (i > 1 && b == breakpoints_[i - 1] && b == breakpoints_[i - 2]) {
      throw ValidationError("more than two equal breakpoints", path);
    }
  }
  for (std::size_t i = 0; i < slopes_.size(); ++i) {
    if (!std::isfinite(slopes_[i])) {
      throw ValidationError("slope must be finite",
                            "/slopes/" + std::to_string(i));
    }
  }
}

double PiecewiseLinearUtility::Evaluate(double n) const {
  const double tol = 1e-9 * domain_max_;
  if (!(n >= -tol && n <= domain_max_ + tol)) {
    throw DomainError("output " + std::to_string(n) + " outside [0, " +
                      std::to_string(domain_max_) + "]");
  }
  n = std::clamp(n, 0.0, domain_max_);
  const std::size_t k = breakpoints_.size();
  double u = anchor_;
  for (std::size_t i = 0; i <= k; ++i) {
    const double lo = i == 0 ? 0.0 : breakpoints_[i - 1];
    const double hi = i == k ? domain_max_ : breakpoints_[i];
    if (i > 0 && i < k && lo == hi) {
      if (n >= lo) u += slopes_[i];
      continue;
    }
    if (n <= lo) break;
    u += slopes_[i] * (std::min(n, hi) - lo);
  }
  return u;
}

std::vector<Segment> PiecewiseLinearUtility::Segments() const {
  std::vector<Segment> out;
  const std::size_t k = breakpoints_.size();
  double u = anchor_;
  bool pending_jump = false;
  double jump_at = 0.0;
  for (std::size_t i = 0; i <= k; ++i) {
    const double lo = i == 0 ? 0.0 : breakpoints_[i - 1];
    const double hi = i == k ? domain_max_ : breakpoints_[i];
    if (i > 0 && i < k && lo == hi) {
      if (slopes_[i] != 0.0) {
        if (!out.empty() && out.back().right == lo) out.back().open_right = true;
        u += slopes_[i];
        pending_jump = true;
        jump_at = lo;
      }
      continue;
    }
    if (hi <= lo) continue;
    const double slope = slopes_[i];
    Segment s{lo, hi, u, slope, false};
    u += slope * (hi - lo);
    pending_jump = false;
    if (!out.empty()) {
      Segment& prev = out.back();
      const double scale = std::max({1.0, std::abs(prev.slope), std::abs(slope)});
      if (!prev.open_right && prev.right == lo &&
          std::abs(prev.slope - slope) <= 1e-12 * scale) {
        prev.right = hi;
        continue;
      }
    }
    out.push_back(s);
  }
  if (pending_jump) out.push_back({jump_at, jump_at, u, 0.0, false});
  return out;
}

bool PiecewiseLinearUtility::HasJumps() const {
  for (std::size_t i = 1; i < breakpoints_.size(); ++i) {
    if (breakpoints_[i] == breakpoints_[i - 1] && slopes_[i] != 0.0) return true;
  }
  return false;
}

bool PiecewiseLinearUtility::IsConcave() const {
  if (HasJumps()) return false;
  const std::vector<Segment> segs = Segments();
  for (std::size_t i = 1; i < segs.size(); ++i) {
    if (segs[i].slope > segs[i - 1].slope) return false;
  }
  return true;
}

std::pair<double, double> PiecewiseLinearUtility::Range() const {
  double lo = anchor_, hi = anchor_;
  for (const Segment& s : Segments()) {
    for (double v : {s.value_left, s.value_right()}) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  return {lo, hi};
}

}  // namespace casemix::utility
