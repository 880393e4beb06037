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

#ifndef CASEMIX_UTILITY_CATALOG_HPP_
#define CASEMIX_UTILITY_CATALOG_HPP_

#include <optional>
#include <string>
#include <string_view>

#include "casemix/utility/plf.hpp"

namespace casemix::utility {

enum class Template {
  kUF1 = 1,
  kUF2,
  kUF3,
  kUF4,
  kUF5,
  kUF6,
  kUF7,
  kUF8,
  kUF9,
  kUF10,
  kUF11,
  kUF12,
  kUF13,
  kUF14,
};

// Shape of the curve. kLinear is the exact piecewise-linear template; the
// others are sampled closed forms and only apply to some templates:
//   UF1: kPower, kComplementPower, kExponential, kCalibratedExponential
//   UF2, UF3: kPower
//   UF6: kBeta
//   UF7: kSigmoid (its only form)
enum class Variant {
  kLinear,
  kPower,
  kComplementPower,
  kExponential,
  kCalibratedExponential,
  kBeta,
  kSigmoid,
};

// An output level given either in patients or as a fraction of the group's
// upper bound.
struct OutputLevel {
  double value = 0.0;
  bool relative = false;

  static OutputLevel Absolute(double v) { return {v, false}; }
  static OutputLevel Fraction(double f) { return {f, true}; }
  double Resolve(double upper_bound) const {
    return relative ? value * upper_bound : value;
  }
};

struct UfParams {
  std::optional<OutputLevel> indifference;  // n^I
  std::optional<OutputLevel> aspiration;    // n^A
  std::optional<double> reference;          // zeta, fraction of the bound (UF7)
  std::optional<double> alpha;
  std::optional<double> beta;
  std::optional<double> steepness;          // UF7
  std::optional<double> tier_utility;       // u* (UF9)
  std::optional<double> income;             // f per patient (UF11)
  std::optional<double> penalty;            // gamma per patient short (UF11, UF13, UF14)
  std::optional<double> reward;             // w per patient (UF12, UF13)
};

struct UfSpec {
  Template tmpl = Template::kUF1;
  Variant variant = Variant::kLinear;
  UfParams params;
  // Weight of this group's utility in the achievement function.
  double weight = 1.0;
  // Breakpoint count for sampled variants.
  int samples = 30;
};

std::string_view ToString(Template t);
std::string_view ToString(Variant v);
// Accept "UF7", "uf7" or "7". Throw ValidationError otherwise.
Template ParseTemplate(std::string_view text);
Variant ParseVariant(std::string_view text);

// Templates with a jump in the value (UF8-UF10, UF12, UF13).
bool IsDiscontinuous(Template t);

// Builds the utility for one group. Throws ValidationError (path relative to
// the spec, e.g. "/params/aspiration") when a parameter is missing or out of
// range, including an aspiration above the upper bound.
PiecewiseLinearUtility Instantiate(const UfSpec& spec, double upper_bound);

// Checks the same rules as Instantiate without building anything.
void Validate(const UfSpec& spec, double upper_bound);

}  // namespace casemix::utility

#endif  // CASEMIX_UTILITY_CATALOG_HPP_
