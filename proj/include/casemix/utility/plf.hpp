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

#ifndef CASEMIX_UTILITY_PLF_HPP_
#define CASEMIX_UTILITY_PLF_HPP_

#include <utility>
#include <vector>

namespace casemix::utility {

// One linear piece u(x) = value_left + slope * (x - left) on [left, right].
// A piece followed by a jump is open on the right.
struct Segment {
  double left = 0.0;
  double right = 0.0;
  double value_left = 0.0;
  double slope = 0.0;
  bool open_right = false;

  double value_right() const { return value_left + slope * (right - left); }
  double ValueAt(double x) const { return value_left + slope * (x - left); }
};

// Piecewise-linear utility on [0, domain_max].
//
// slopes[i] applies between breakpoints[i-1] and breakpoints[i] (with 0 and
// domain_max as the outer ends), so slopes has one more entry than
// breakpoints. When breakpoints[i-1] == breakpoints[i] the entry is instead
// an absolute jump height, and the value at the jump point is the value
// after the jump.
class PiecewiseLinearUtility {
 public:
  PiecewiseLinearUtility() = default;

  // Throws ValidationError when the invariants do not hold.
  PiecewiseLinearUtility(double anchor, std::vector<double> breakpoints,
                         std::vector<double> slopes, double domain_max);

  double anchor() const { return anchor_; }
  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const std::vector<double>& slopes() const { return slopes_; }
  double domain_max() const { return domain_max_; }

  // Throws DomainError outside [0, domain_max]; values within a relative
  // 1e-9 of the ends are clamped.
  double Evaluate(double n) const;

  // Linear pieces of positive width in increasing order; collinear
  // neighbours are merged. A jump at domain_max yields a final zero-width
  // piece holding the post-jump value.
  std::vector<Segment> Segments() const;

  bool HasJumps() const;
  // No jumps and nonincreasing slopes.
  bool IsConcave() const;

  // Smallest and largest values over the domain, counting left limits at
  // jumps.
  std::pair<double, double> Range() const;

 private:
  double anchor_ = 0.0;
  std::vector<double> breakpoints_;
  std::vector<double> slopes_{0.0};
  double domain_max_ = 1.0;
};

using Plf = PiecewiseLinearUtility;

}  // namespace casemix::utility

#endif  // CASEMIX_UTILITY_PLF_HPP_
