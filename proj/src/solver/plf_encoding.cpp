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

#include "casemix/solver/plf_encoding.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "casemix/error.hpp"

namespace casemix::solver {
namespace {

using utility::Segment;

struct Piece {
  double left;
  double right;    // after the open-boundary shift
  double slope;
  double intercept;  // value of the line at x = 0
};

std::vector<Piece> Pieces(const utility::PiecewiseLinearUtility& plf) {
  const double eps_open = 1e-7 * plf.domain_max();
  std::vector<Piece> out;
  for (const Segment& s : plf.Segments()) {
    double right = s.right;
    if (s.open_right) right = std::max(s.left, s.right - eps_open);
    out.push_back({s.left, right, s.slope, s.value_left - s.slope * s.left});
  }
  return out;
}

}  // namespace

double SnappedOutput(const EncodedUtility& enc, const std::vector<double>& values) {
  const double x = values.at(enc.x.index);
  for (std::size_t i = 0; i < enc.selectors.size(); ++i) {
    if (values.at(enc.selectors[i].index) > 0.5) {
      return std::clamp(x, enc.pieces[i].first, enc.pieces[i].second);
    }
  }
  return x;
}

double BigM(const utility::PiecewiseLinearUtility& plf) {
  const auto [umin, umax] = plf.Range();
  const double dmax = plf.domain_max();
  double m = std::max(dmax, umax - umin);
  for (const Piece& p : Pieces(plf)) {
    const double at0 = p.intercept;
    const double at1 = p.intercept + p.slope * dmax;
    m = std::max({m, umax - std::min(at0, at1), std::max(at0, at1) - umin});
  }
  return m;
}

EncodedUtility EncodePlf(Program& program, VarId x,
                         const utility::PiecewiseLinearUtility& plf,
                         const std::string& prefix,
                         const EncodeOptions& options) {
  const Variable& xv = program.variable(x);
  const double dmax = plf.domain_max();
  program.SetVariableBounds(x, std::max(xv.lower, 0.0), std::min(xv.upper, dmax));

  const std::vector<Piece> pieces = Pieces(plf);
  if (static_cast<int>(pieces.size()) > options.max_segments) {
    throw ValidationError("utility has " + std::to_string(pieces.size()) +
                              " pieces, more than the limit of " +
                              std::to_string(options.max_segments),
                          "/segments");
  }

  EncodedUtility enc;
  enc.x = x;
  enc.u = program.AddVariable(prefix + "_u", -kInfinity, kInfinity);
  PlfEncoding mode = options.encoding;
  if (mode == PlfEncoding::kAuto) {
    mode = plf.IsConcave() ? PlfEncoding::kEpigraph : PlfEncoding::kMultipleChoice;
  }
  if (mode == PlfEncoding::kEpigraph && !plf.IsConcave()) {
    throw ValidationError("epigraph encoding requires a concave utility",
                          "/encoding");
  }
  enc.encoding = mode;

  if (pieces.size() == 1) {
    const Piece& p = pieces.front();
    program.AddConstraint(prefix + "_line",
                          LinearExpr(enc.u).Add(x, -p.slope), Sense::kEqual,
                          p.intercept);
    return enc;
  }

  if (mode == PlfEncoding::kEpigraph) {
    for (std::size_t i = 0; i < pieces.size(); ++i) {
      const Piece& p = pieces[i];
      program.AddConstraint(prefix + "_epi" + std::to_string(i),
                            LinearExpr(enc.u).Add(x, -p.slope),
                            Sense::kLessEqual, p.intercept);
    }
    return enc;
  }

  LinearExpr pick;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    VarId d = program.AddBinary(prefix + "_d" + std::to_string(i));
    enc.selectors.push_back(d);
    enc.pieces.emplace_back(pieces[i].left, pieces[i].right);
    pick.Add(d, 1.0);
  }
  program.AddConstraint(prefix + "_one", pick, Sense::kEqual, 1.0);

  if (mode == PlfEncoding::kMultipleChoice) {
    LinearExpr sum_x(x, -1.0);
    LinearExpr value(enc.u, 1.0);
    for (std::size_t i = 0; i < pieces.size(); ++i) {
      const Piece& p = pieces[i];
      const std::string tag = prefix + "_" + std::to_string(i);
      VarId xi = program.AddVariable(tag + "_x", 0.0, p.right);
      VarId d = enc.selectors[i];
      program.AddConstraint(tag + "_r", LinearExpr(xi).Add(d, -p.right),
                            Sense::kLessEqual, 0.0);
      if (p.left > 0.0) {
        program.AddConstraint(tag + "_l", LinearExpr(xi).Add(d, -p.left),
                              Sense::kGreaterEqual, 0.0);
      }
      sum_x.Add(xi, 1.0);
      value.Add(xi, -p.slope).Add(d, -p.intercept);
    }
    program.AddConstraint(prefix + "_split", sum_x, Sense::kEqual, 0.0);
    program.AddConstraint(prefix + "_value", value, Sense::kEqual, 0.0);
    return enc;
  }

  const double m = BigM(plf);
  enc.big_m = m;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const Piece& p = pieces[i];
    const std::string tag = prefix + "_" + std::to_string(i);
    VarId d = enc.selectors[i];
    // l - M(1 - d) <= x <= r + M(1 - d)
    program.AddConstraint(tag + "_l", LinearExpr(x).Add(d, -m),
                          Sense::kGreaterEqual, p.left - m);
    program.AddConstraint(tag + "_r", LinearExpr(x).Add(d, m),
                          Sense::kLessEqual, p.right + m);
    // line(x) - M(1 - d) <= u <= line(x) + M(1 - d)
    program.AddConstraint(tag + "_ub", LinearExpr(enc.u).Add(x, -p.slope).Add(d, m),
                          Sense::kLessEqual, p.intercept + m);
    program.AddConstraint(tag + "_lb", LinearExpr(enc.u).Add(x, -p.slope).Add(d, -m),
                          Sense::kGreaterEqual, p.intercept - m);
  }
  return enc;
}

}  // namespace casemix::solver
