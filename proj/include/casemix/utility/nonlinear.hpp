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

#ifndef CASEMIX_UTILITY_NONLINEAR_HPP_
#define CASEMIX_UTILITY_NONLINEAR_HPP_

#include "casemix/utility/catalog.hpp"
#include "casemix/utility/plf.hpp"

namespace casemix::utility {

// A closed-form utility curve over [0, upper_bound].
struct NonlinearCurve {
  Template tmpl = Template::kUF1;
  Variant variant = Variant::kPower;
  double alpha = 1.0;
  double beta = 1.0;
  double steepness = 20.0;
  double reference = 0.5;
  double indifference = 0.0;  // absolute, UF2
  double aspiration = 0.0;    // absolute, UF3
};

// Exact value of the curve at n. UF6 beta-shape is returned uncalibrated
// (scale 1); SampleNonlinear applies the calibration.
double EvaluateCurve(const NonlinearCurve& curve, double upper_bound, double n);

// Uniform breakpoints b[i] = i * ub / (I - 1), i = 1..I-1, with chord slopes
// between consecutive samples and a flat tail past the bound.
PiecewiseLinearUtility SampleNonlinear(const NonlinearCurve& curve,
                                       double upper_bound, int num_points = 30);

}  // namespace casemix::utility

#endif  // CASEMIX_UTILITY_NONLINEAR_HPP_
