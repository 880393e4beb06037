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

#include "casemix/utility/nonlinear.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "casemix/error.hpp"

namespace casemix::utility {

double EvaluateCurve(const NonlinearCurve& c, double ub, double n) {
  const double x = n / ub;
  double u = std::nan("");
  switch (c.tmpl) {
    case Template::kUF1:
      switch (c.variant) {
        case Variant::kPower:
          u = 100.0 * std::pow(x, c.alpha);
          break;
        case Variant::kComplementPower:
          u = 100.0 * (1.0 - std::pow(1.0 - x, c.beta));
          break;
        case Variant::kExponential:
          u = std::exp(std::log(101.0) * x) - 1.0;
          break;
        case Variant::kCalibratedExponential:
          u = 100.0 / (std::numbers::e - 1.0) * (std::exp(std::pow(x, c.alpha)) - 1.0);
          break;
        default:
          break;
      }
      break;
    case Template::kUF2:
      if (c.variant == Variant::kPower) {
        u = 100.0 * std::pow(std::max(n - c.indifference, 0.0) / (ub - c.indifference),
                             c.alpha);
      }
      break;
    case Template::kUF3:
      if (c.variant == Variant::kPower) {
        u = 100.0 * std::pow(std::min(n, c.aspiration) / c.aspiration, c.alpha);
      }
      break;
    case Template::kUF6:
      if (c.variant == Variant::kBeta) {
        u = std::pow(x, c.alpha) * std::pow(std::max(1.0 - x, 0.0), c.beta);
      }
      break;
    case Template::kUF7:
      u = 100.0 / (1.0 + std::exp(-c.steepness * (x - c.reference)));
      break;
    default:
      break;
  }
  if (!std::isfinite(u)) {
    throw DomainError("curve " + std::string(ToString(c.tmpl)) + "/" +
                      std::string(ToString(c.variant)) + " undefined at n=" +
                      std::to_string(n));
  }
  return u;
}

PiecewiseLinearUtility SampleNonlinear(const NonlinearCurve& curve, double ub,
                                       int num_points) {
  if (num_points < 2) {
    throw ValidationError("at least two sample points are required", "/samples");
  }
  if (!(ub > 0.0) || !std::isfinite(ub)) {
    throw ValidationError("upper bound must be positive", "/upper_bound");
  }
  const int intervals = num_points - 1;
  const double delta = ub / intervals;
  std::vector<double> at(num_points);
  std::vector<double> values(num_points);
  for (int i = 0; i < num_points; ++i) {
    at[i] = i == intervals ? ub : delta * i;
    values[i] = EvaluateCurve(curve, ub, at[i]);
  }
  if (curve.tmpl == Template::kUF6) {
    const double peak = *std::max_element(values.begin(), values.end());
    if (!(peak > 0.0)) {
      throw DomainError("beta-shaped curve has no positive sample to calibrate");
    }
    for (double& v : values) v *= 100.0 / peak;
  }
  std::vector<double> breakpoints(at.begin() + 1, at.end());
  std::vector<double> slopes;
  for (int i = 1; i < num_points; ++i) {
    slopes.push_back((values[i] - values[i - 1]) / (at[i] - at[i - 1]));
  }
  slopes.push_back(0.0);
  return PiecewiseLinearUtility(values[0], std::move(breakpoints),
                                std::move(slopes), ub);
}

}  // namespace casemix::utility
