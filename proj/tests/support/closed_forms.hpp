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

#ifndef CASEMIX_TESTS_SUPPORT_CLOSED_FORMS_HPP_
#define CASEMIX_TESTS_SUPPORT_CLOSED_FORMS_HPP_

#include <algorithm>
#include <cmath>

// Direct formulas for the utility templates, written independently of the
// breakpoint/slope construction so the two can be compared.
namespace casemix::testing {

struct ClosedFormParams {
  double ub = 100;
  double ni = 0;      // indifference
  double na = 0;      // aspiration
  double target = 0;  // threshold for UF8, UF11-UF14
  double tier = 50;
  double f = 1;
  double gamma = 1;
  double w = 1;
  double band = 0;    // UF10 half width
};

inline double ClosedForm(int uf, const ClosedFormParams& p, double n) {
  switch (uf) {
    case 1:
      return 100.0 * n / p.ub;
    case 2:
      return 100.0 * std::max(n - p.ni, 0.0) / (p.ub - p.ni);
    case 3:
      return 100.0 * std::min(n, p.na) / p.na;
    case 4:
      if (n < p.ni) return 0.0;
      if (n > p.na) return 100.0;
      return 100.0 * (n - p.ni) / (p.na - p.ni);
    case 5:
      return 100.0 * (n - p.ni) / (p.ub - p.ni);
    case 6:
      if (n <= p.na) return 100.0 * n / p.na;
      return 100.0 * (p.ub - n) / (p.ub - p.na);
    case 8:
      return n < p.target ? 0.0 : 100.0;
    case 9:
      if (n < p.ni) return 0.0;
      if (n < p.na) return p.tier;
      return 100.0;
    case 10:
      return (n >= p.na - p.band && (n < p.na + p.band || p.na + p.band >= p.ub))
                 ? 100.0
                 : 0.0;
    case 11:
      return n >= p.target ? n * p.f : n * p.f - (p.target - n) * p.gamma;
    case 12:
      return n >= p.target ? p.w * n : 0.0;
    case 13:
      return n >= p.target ? p.w * n : -p.gamma * (p.target - n);
    case 14:
      return n >= p.target ? 0.0 : -(p.target - n) * p.gamma;
    default:
      return std::nan("");
  }
}

}  // namespace casemix::testing

#endif  // CASEMIX_TESTS_SUPPORT_CLOSED_FORMS_HPP_
