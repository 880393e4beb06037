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

#ifndef CASEMIX_SOLVER_LP_WRITER_HPP_
#define CASEMIX_SOLVER_LP_WRITER_HPP_

#include <ostream>
#include <string>

#include "casemix/solver/program.hpp"

namespace casemix::solver {

// Writes `program` in CPLEX LP format. Coefficients are printed with 17
// significant digits so they read back bit-exact.
void WriteLp(const Program& program, std::ostream& out);
std::string ToLpString(const Program& program);

}  // namespace casemix::solver

#endif  // CASEMIX_SOLVER_LP_WRITER_HPP_
