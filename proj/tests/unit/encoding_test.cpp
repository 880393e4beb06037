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

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <string>

#include "casemix/error.hpp"
#include "casemix/solver/backend.hpp"
#include "casemix/solver/plf_encoding.hpp"
#include "casemix/utility/catalog.hpp"
#include "support/property_suite.hpp"

namespace casemix::solver {
namespace {

using utility::OutputLevel;
using utility::Plf;
using utility::Template;
using utility::UfSpec;
using utility::Variant;

UfSpec Spec(Template t) {
  UfSpec s;
  s.tmpl = t;
  return s;
}

TEST(EncodingTest, LinearUtilityIsOneEquality) {
  Program p;
  VarId x = p.AddVariable("x", 0, kInfinity);
  const EncodedUtility e = EncodePlf(p, x, utility::Instantiate(Spec(Template::kUF1), 80), "g");
  EXPECT_TRUE(e.selectors.empty());
  ASSERT_EQ(p.num_constraints(), 1);
  EXPECT_EQ(p.constraints()[0].sense, Sense::kEqual);
  EXPECT_EQ(p.num_binaries(), 0);
  EXPECT_EQ(p.variable(x).upper, 80.0);
}

double MaxUtilityWithCap(const Plf& plf, double cap, PlfEncoding enc) {
  Program p;
  VarId x = p.AddVariable("x", 0, cap);
  EncodeOptions o;
  o.encoding = enc;
  const EncodedUtility e = EncodePlf(p, x, plf, "g", o);
  p.SetObjective(ObjectiveSense::kMaximize, LinearExpr(e.u));
  const SolveStatus s = Solve(p);
  EXPECT_TRUE(s.optimal()) << s.message;
  return s.objective;
}

TEST(EncodingTest, OneTierStepNeedsBinaries) {
  UfSpec s = Spec(Template::kUF8);
  s.params.indifference = OutputLevel::Absolute(30);
  const Plf plf = utility::Instantiate(s, 100);
  for (PlfEncoding enc : {PlfEncoding::kMultipleChoice, PlfEncoding::kBigM}) {
    EXPECT_NEAR(MaxUtilityWithCap(plf, 29, enc), 0.0, 1e-7);
    EXPECT_NEAR(MaxUtilityWithCap(plf, 31, enc), 100.0, 1e-7);
    EXPECT_NEAR(MaxUtilityWithCap(plf, 30, enc), 100.0, 1e-7);
  }
  EXPECT_THROW(MaxUtilityWithCap(plf, 31, PlfEncoding::kEpigraph), ValidationError);
}

TEST(EncodingTest, TriangularUsesEpigraphAndFindsApex) {
  UfSpec s = Spec(Template::kUF6);
  s.params.aspiration = OutputLevel::Absolute(35);
  const Plf plf = utility::Instantiate(s, 100);
  Program p;
  VarId x = p.AddVariable("x", 0, kInfinity);
  const EncodedUtility e = EncodePlf(p, x, plf, "g");
  EXPECT_EQ(e.encoding, PlfEncoding::kEpigraph);
  EXPECT_EQ(p.num_binaries(), 0);
  p.SetObjective(ObjectiveSense::kMaximize, LinearExpr(e.u));
  const SolveStatus st = Solve(p);
  ASSERT_TRUE(st.optimal());
  EXPECT_NEAR(st.value(x), 35.0, 1e-7);
  EXPECT_NEAR(st.objective, 100.0, 1e-7);
}

TEST(EncodingTest, SegmentCapEnforced) {
  UfSpec s = Spec(Template::kUF1);
  s.variant = Variant::kPower;
  s.params.alpha = 2;
  s.samples = 80;
  Program p;
  VarId x = p.AddVariable("x", 0, kInfinity);
  EXPECT_THROW(EncodePlf(p, x, utility::Instantiate(s, 100), "g"), ValidationError);
  EncodeOptions o;
  o.max_segments = 100;
  EXPECT_NO_THROW(EncodePlf(p, x, utility::Instantiate(s, 100), "g", o));
}

TEST(EncodingTest, BigMCoversExtrapolatedPieces) {
  UfSpec s = Spec(Template::kUF2);
  s.params.indifference = OutputLevel::Fraction(0.9);
  const Plf plf = utility::Instantiate(s, 100);
  EXPECT_GE(BigM(plf), 900.0);
  EXPECT_GE(BigM(plf), 100.0);
}

TEST(EncodingPropertyTest, SolvedUtilityMatchesEvaluate) {
  const auto tally = casemix::testing::EncodingExactnessSuite(260, 99);
  EXPECT_GE(tally.cases, 500);
  EXPECT_EQ(tally.failures, 0) << tally.first_failure;
}

TEST(EncodingPropertyTest, EncodingsAgreeOnOptimum) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 120; ++trial) {
    const UfSpec spec = casemix::testing::EncodingSpec(rng);
    const double ub = std::uniform_real_distribution<double>(10, 5000)(rng);
    const Plf plf = utility::Instantiate(spec, ub);
    const double cap = std::uniform_real_distribution<double>(0, 1)(rng) * ub;
    const double mc = MaxUtilityWithCap(plf, cap, PlfEncoding::kMultipleChoice);
    const double bm = MaxUtilityWithCap(plf, cap, PlfEncoding::kBigM);
    EXPECT_NEAR(mc, bm, 1e-6 * std::max(1.0, std::abs(mc))) << ToString(spec.tmpl);
    if (plf.IsConcave()) {
      const double ep = MaxUtilityWithCap(plf, cap, PlfEncoding::kEpigraph);
      EXPECT_NEAR(ep, mc, 1e-6 * std::max(1.0, std::abs(mc))) << ToString(spec.tmpl);
    }
  }
}

}  // namespace
}  // namespace casemix::solver
