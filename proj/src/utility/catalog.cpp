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

#include "casemix/utility/catalog.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>
#include <vector>

#include "casemix/error.hpp"
#include "casemix/utility/nonlinear.hpp"

namespace casemix::utility {
namespace {

constexpr std::string_view kVariantNames[] = {
    "linear", "power", "complement_power", "exponential",
    "calibrated_exponential", "beta", "sigmoid"};

// Parameters after resolving fractions and defaults.
struct Resolved {
  double ub = 0.0;
  std::optional<double> indifference;
  std::optional<double> aspiration;
};

double Require(const std::optional<double>& v, const std::string& name) {
  if (!v) throw ValidationError("parameter required", "/params/" + name);
  if (!std::isfinite(*v)) throw ValidationError("must be finite", "/params/" + name);
  return *v;
}

void RequirePositive(const std::optional<double>& v, const std::string& name) {
  if (Require(v, name) <= 0.0) {
    throw ValidationError("must be positive", "/params/" + name);
  }
}

std::optional<double> ResolveLevel(const std::optional<OutputLevel>& level,
                                   double ub, const std::string& name) {
  if (!level) return std::nullopt;
  const std::string path = "/params/" + name;
  if (!std::isfinite(level->value) || level->value < 0.0) {
    throw ValidationError("must be a nonnegative number", path);
  }
  if (level->relative && level->value > 1.0 + 1e-12) {
    throw ValidationError("fraction of the upper bound must lie in [0, 1]", path);
  }
  const double v = level->Resolve(ub);
  if (v > ub * (1.0 + 1e-9)) {
    throw ValidationError(name + " " + std::to_string(v) +
                              " exceeds the upper bound " + std::to_string(ub) +
                              "; no caseload can reach it",
                          path);
  }
  return std::min(v, ub);
}

// UF8 and UF11-UF14 take one threshold, supplied as either parameter.
double Threshold(const Resolved& r) {
  if (r.indifference) return *r.indifference;
  if (r.aspiration) return *r.aspiration;
  throw ValidationError("parameter required (indifference or aspiration)",
                        "/params/indifference");
}

void CheckVariant(const UfSpec& spec, std::initializer_list<Variant> allowed) {
  if (std::find(allowed.begin(), allowed.end(), spec.variant) == allowed.end()) {
    throw ValidationError("variant '" + std::string(ToString(spec.variant)) +
                              "' is not available for " +
                              std::string(ToString(spec.tmpl)),
                          "/variant");
  }
}

Resolved CheckAndResolve(const UfSpec& spec, double ub) {
  if (!std::isfinite(ub) || ub <= 0.0) {
    throw ValidationError("upper bound must be positive", "/upper_bound");
  }
  if (!std::isfinite(spec.weight) || spec.weight <= 0.0) {
    throw ValidationError("weight must be positive", "/weight");
  }
  if (spec.samples < 2) {
    throw ValidationError("at least two sample points are required", "/samples");
  }
  Resolved r;
  r.ub = ub;
  r.indifference = ResolveLevel(spec.params.indifference, ub, "indifference");
  r.aspiration = ResolveLevel(spec.params.aspiration, ub, "aspiration");
  const UfParams& p = spec.params;

  auto need_indifference_below_bound = [&] {
    if (!r.indifference) {
      throw ValidationError("parameter required", "/params/indifference");
    }
    if (*r.indifference >= ub) {
      throw ValidationError("indifference must be below the upper bound",
                            "/params/indifference");
    }
  };
  auto need_aspiration = [&] {
    if (!r.aspiration) throw ValidationError("parameter required", "/params/aspiration");
    if (*r.aspiration <= 0.0) {
      throw ValidationError("aspiration must be positive", "/params/aspiration");
    }
  };
  auto need_ordered = [&] {
    need_aspiration();
    if (!r.indifference) {
      throw ValidationError("parameter required", "/params/indifference");
    }
    if (*r.indifference >= *r.aspiration) {
      throw ValidationError("indifference must be below aspiration",
                            "/params/indifference");
    }
  };
  auto nonnegative = [&](const std::optional<double>& v, const std::string& name) {
    if (v && (!std::isfinite(*v) || *v < 0.0)) {
      throw ValidationError("must be nonnegative", "/params/" + name);
    }
  };

  switch (spec.tmpl) {
    case Template::kUF1:
      CheckVariant(spec, {Variant::kLinear, Variant::kPower, Variant::kComplementPower,
                          Variant::kExponential, Variant::kCalibratedExponential});
      if (spec.variant == Variant::kPower ||
          spec.variant == Variant::kCalibratedExponential) {
        RequirePositive(p.alpha, "alpha");
      }
      if (spec.variant == Variant::kComplementPower) RequirePositive(p.beta, "beta");
      break;
    case Template::kUF2:
      CheckVariant(spec, {Variant::kLinear, Variant::kPower});
      need_indifference_below_bound();
      if (spec.variant == Variant::kPower) RequirePositive(p.alpha, "alpha");
      break;
    case Template::kUF3:
      CheckVariant(spec, {Variant::kLinear, Variant::kPower});
      need_aspiration();
      if (spec.variant == Variant::kPower) RequirePositive(p.alpha, "alpha");
      break;
    case Template::kUF4:
      CheckVariant(spec, {Variant::kLinear});
      need_ordered();
      break;
    case Template::kUF5:
      CheckVariant(spec, {Variant::kLinear});
      need_indifference_below_bound();
      break;
    case Template::kUF6:
      CheckVariant(spec, {Variant::kLinear, Variant::kBeta});
      if (spec.variant == Variant::kBeta) {
        RequirePositive(p.alpha, "alpha");
        RequirePositive(p.beta, "beta");
      } else {
        need_aspiration();
      }
      break;
    case Template::kUF7: {
      CheckVariant(spec, {Variant::kLinear, Variant::kSigmoid});
      const double zeta = Require(p.reference, "reference");
      if (zeta < 0.0 || zeta > 1.0) {
        throw ValidationError("reference must lie in [0, 1]", "/params/reference");
      }
      RequirePositive(p.steepness, "steepness");
      break;
    }
    case Template::kUF8:
      CheckVariant(spec, {Variant::kLinear});
      Threshold(r);
      break;
    case Template::kUF9:
      CheckVariant(spec, {Variant::kLinear});
      need_ordered();
      Require(p.tier_utility, "tier_utility");
      break;
    case Template::kUF10:
      CheckVariant(spec, {Variant::kLinear});
      need_aspiration();
      break;
    case Template::kUF11:
    case Template::kUF12:
    case Template::kUF13:
    case Template::kUF14:
      CheckVariant(spec, {Variant::kLinear});
      Threshold(r);
      nonnegative(p.income, "income");
      nonnegative(p.penalty, "penalty");
      nonnegative(p.reward, "reward");
      break;
  }
  return r;
}

}  // namespace

std::string_view ToString(Template t) {
  static const std::string names[] = {"UF1", "UF2",  "UF3",  "UF4",  "UF5",
                                      "UF6", "UF7",  "UF8",  "UF9",  "UF10",
                                      "UF11", "UF12", "UF13", "UF14"};
  return names[static_cast<int>(t) - 1];
}

std::string_view ToString(Variant v) { return kVariantNames[static_cast<int>(v)]; }

Template ParseTemplate(std::string_view text) {
  std::string s;
  for (char c : text) s += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  if (s.rfind("UF", 0) == 0) s = s.substr(2);
  if (!s.empty() && s.size() <= 2 &&
      std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
    const int k = std::stoi(s);
    if (k >= 1 && k <= 14) return static_cast<Template>(k);
  }
  throw ValidationError("unknown template '" + std::string(text) + "' (UF1..UF14)",
                        "/template");
}

Variant ParseVariant(std::string_view text) {
  for (std::size_t i = 0; i < std::size(kVariantNames); ++i) {
    if (kVariantNames[i] == text) return static_cast<Variant>(i);
  }
  throw ValidationError("unknown variant '" + std::string(text) + "'", "/variant");
}

bool IsDiscontinuous(Template t) {
  return t == Template::kUF8 || t == Template::kUF9 || t == Template::kUF10 ||
         t == Template::kUF12 || t == Template::kUF13;
}

void Validate(const UfSpec& spec, double upper_bound) {
  CheckAndResolve(spec, upper_bound);
}

PiecewiseLinearUtility Instantiate(const UfSpec& spec, double ub) {
  const Resolved r = CheckAndResolve(spec, ub);
  const UfParams& p = spec.params;

  if (spec.variant != Variant::kLinear || spec.tmpl == Template::kUF7) {
    NonlinearCurve c;
    c.tmpl = spec.tmpl;
    c.variant = spec.tmpl == Template::kUF7 ? Variant::kSigmoid : spec.variant;
    c.alpha = p.alpha.value_or(1.0);
    c.beta = p.beta.value_or(1.0);
    c.steepness = p.steepness.value_or(0.0);
    c.reference = p.reference.value_or(0.0);
    c.indifference = r.indifference.value_or(0.0);
    c.aspiration = r.aspiration.value_or(0.0);
    return SampleNonlinear(c, ub, spec.samples);
  }

  const double unit = 100.0 / ub;
  switch (spec.tmpl) {
    case Template::kUF1:
      return Plf(0.0, {ub}, {unit, 0.0}, ub);
    case Template::kUF2: {
      const double ni = *r.indifference;
      return Plf(0.0, {ni}, {0.0, 100.0 / (ub - ni)}, ub);
    }
    case Template::kUF3: {
      const double na = *r.aspiration;
      return Plf(0.0, {na}, {100.0 / na, 0.0}, ub);
    }
    case Template::kUF4: {
      const double ni = *r.indifference, na = *r.aspiration;
      return Plf(0.0, {ni, na}, {0.0, 100.0 / (na - ni), 0.0}, ub);
    }
    case Template::kUF5: {
      const double ni = *r.indifference;
      return Plf(-100.0 * ni / (ub - ni), {ub}, {100.0 / (ub - ni), 0.0}, ub);
    }
    case Template::kUF6: {
      const double na = *r.aspiration;
      const double down = na < ub ? -100.0 / (ub - na) : 0.0;
      return Plf(0.0, {na}, {100.0 / na, down}, ub);
    }
    case Template::kUF8: {
      const double t = Threshold(r);
      return Plf(0.0, {t, t}, {0.0, 100.0, 0.0}, ub);
    }
    case Template::kUF9: {
      const double ni = *r.indifference, na = *r.aspiration;
      const double tier = *p.tier_utility;
      return Plf(0.0, {ni, ni, na, na}, {0.0, tier, 0.0, 100.0 - tier, 0.0}, ub);
    }
    case Template::kUF10: {
      const double na = *r.aspiration;
      const double eps = 1e-6 * ub;
      const double lo = std::max(na - eps, 0.0);
      if (na + eps >= ub) return Plf(0.0, {lo, lo}, {0.0, 100.0, 0.0}, ub);
      return Plf(0.0, {lo, lo, na + eps, na + eps}, {0.0, 100.0, 0.0, -100.0, 0.0}, ub);
    }
    case Template::kUF11: {
      const double t = Threshold(r);
      const double f = p.income.value_or(unit);
      const double g = p.penalty.value_or(unit);
      return Plf(-g * t, {t}, {f + g, f}, ub);
    }
    case Template::kUF12: {
      const double t = Threshold(r);
      const double w = p.reward.value_or(unit);
      return Plf(0.0, {t, t}, {0.0, w * t, w}, ub);
    }
    case Template::kUF13: {
      const double t = Threshold(r);
      const double w = p.reward.value_or(unit);
      const double g = p.penalty.value_or(unit);
      return Plf(-g * t, {t, t}, {g, w * t, w}, ub);
    }
    case Template::kUF14: {
      const double t = Threshold(r);
      const double g = p.penalty.value_or(unit);
      return Plf(-g * t, {t}, {g, 0.0}, ub);
    }
    case Template::kUF7:
      break;
  }
  throw ValidationError("unsupported template", "/template");
}

}  // namespace casemix::utility
