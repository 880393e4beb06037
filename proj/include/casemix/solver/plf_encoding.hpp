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

#ifndef CASEMIX_SOLVER_PLF_ENCODING_HPP_
#define CASEMIX_SOLVER_PLF_ENCODING_HPP_

#include <string>
#include <utility>
#include <vector>

#include "casemix/solver/program.hpp"
#include "casemix/utility/plf.hpp"

namespace casemix::solver {

enum class PlfEncoding {
  // Epigraph rows for concave utilities, multiple choice otherwise.
  kAuto,
  // u <= line_i(x) per piece. Exact only for concave utilities whose u is
  // pushed up by the objective.
  kEpigraph,
  // One binary per piece with a disaggregated copy of x per piece; its LP
  // relaxation is the convex hull of the graph.
  kMultipleChoice,
  // One binary per piece, constraints relaxed by a big-M when unselected.
  kBigM,
};

struct EncodeOptions {
  PlfEncoding encoding = PlfEncoding::kAuto;
  int max_segments = 64;
};

struct EncodedUtility {
  VarId x;
  VarId u;
  std::vector<VarId> selectors;
  // [left, right] of the piece behind each selector, right already shifted
  // off open ends.
  std::vector<std::pair<double, double>> pieces;
  PlfEncoding encoding = PlfEncoding::kAuto;
  double big_m = 0.0;
};

// Adds a variable u with u = plf(x) (u <= plf(x) for the epigraph form) and
// narrows the bounds of x to [0, domain_max]. Names get `prefix`.
// Pieces followed by a jump end eps_open = 1e-7 * domain_max before the
// jump, so the jump point belongs to the upper piece.
// Throws ValidationError when the utility has more than max_segments pieces
// or kEpigraph is requested for a non-concave utility.
EncodedUtility EncodePlf(Program& program, VarId x,
                         const utility::PiecewiseLinearUtility& plf,
                         const std::string& prefix,
                         const EncodeOptions& options = {});

// Output of the solved point moved into the selected piece (a no-op for
// encodings without selectors). Solver round-off can leave x a hair outside
// the piece, which matters exactly at jump points.
double SnappedOutput(const EncodedUtility& enc, const std::vector<double>& values);

// Smallest constant that keeps every big-M row of `plf` valid; never below
// max(domain_max, utility range).
double BigM(const utility::PiecewiseLinearUtility& plf);

}  // namespace casemix::solver

#endif  // CASEMIX_SOLVER_PLF_ENCODING_HPP_
