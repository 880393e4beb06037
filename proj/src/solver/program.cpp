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

#include "casemix/solver/program.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <utility>

#include "casemix/error.hpp"

namespace casemix::solver {

LinearExpr& LinearExpr::Add(const LinearExpr& other, double scale) {
  for (const Term& t : other.terms_) Add(t.var, t.coef * scale);
  constant_ += other.constant_ * scale;
  return *this;
}

LinearExpr LinearExpr::Normalized() const {
  std::map<int, double> merged;
  for (const Term& t : terms_) merged[t.var.index] += t.coef;
  LinearExpr out;
  for (const auto& [index, coef] : merged) {
    if (coef != 0.0) out.terms_.push_back({VarId{index}, coef});
  }
  out.constant_ = constant_;
  return out;
}

double LinearExpr::Evaluate(const std::vector<double>& values) const {
  double sum = constant_;
  for (const Term& t : terms_) sum += t.coef * values.at(t.var.index);
  return sum;
}

VarId Program::AddVariable(std::string name, double lower, double upper,
                           VarType type) {
  if (type == VarType::kBinary) {
    lower = std::max(lower, 0.0);
    upper = std::min(upper, 1.0);
  }
  variables_.push_back({std::move(name), lower, upper, type});
  return VarId{static_cast<int>(variables_.size()) - 1};
}

int Program::AddConstraint(std::string name, const LinearExpr& expr,
                           Sense sense, double rhs) {
  LinearExpr normalized = expr.Normalized();
  constraints_.push_back({std::move(name), normalized.terms(), sense,
                          rhs - normalized.constant()});
  return static_cast<int>(constraints_.size()) - 1;
}

void Program::SetObjective(ObjectiveSense sense, const LinearExpr& expr) {
  objective_sense_ = sense;
  objective_ = expr.Normalized();
}

void Program::SetVariableBounds(VarId var, double lower, double upper) {
  Variable& v = variables_.at(var.index);
  v.lower = lower;
  v.upper = upper;
}

int Program::num_binaries() const {
  return static_cast<int>(std::count_if(
      variables_.begin(), variables_.end(),
      [](const Variable& v) { return v.type == VarType::kBinary; }));
}

void Program::Validate() const {
  const int n = num_variables();
  auto check_terms = [n](const std::vector<Term>& terms,
                         const std::string& where) {
    for (const Term& t : terms) {
      if (t.var.index < 0 || t.var.index >= n) {
        throw SolverError(where + ": reference to undeclared variable #" +
                          std::to_string(t.var.index));
      }
      if (!std::isfinite(t.coef)) {
        throw SolverError(where + ": non-finite coefficient");
      }
    }
  };
  for (const Variable& v : variables_) {
    if (std::isnan(v.lower) || std::isnan(v.upper) || v.lower > v.upper) {
      throw SolverError("variable '" + v.name + "' has invalid bounds");
    }
  }
  for (const Constraint& c : constraints_) {
    check_terms(c.terms, "constraint '" + c.name + "'");
    if (!std::isfinite(c.rhs)) {
      throw SolverError("constraint '" + c.name + "' has non-finite rhs");
    }
  }
  check_terms(objective_.terms(), "objective");
}

double Program::MaxViolation(const std::vector<double>& values) const {
  double worst = 0.0;
  for (std::size_t j = 0; j < variables_.size(); ++j) {
    const Variable& v = variables_[j];
    const double x = values.at(j);
    worst = std::max({worst, v.lower - x, x - v.upper});
    if (v.type == VarType::kBinary) {
      worst = std::max(worst, std::abs(x - std::round(x)));
    }
  }
  for (const Constraint& c : constraints_) {
    double activity = 0.0;
    for (const Term& t : c.terms) activity += t.coef * values[t.var.index];
    switch (c.sense) {
      case Sense::kLessEqual:
        worst = std::max(worst, activity - c.rhs);
        break;
      case Sense::kGreaterEqual:
        worst = std::max(worst, c.rhs - activity);
        break;
      case Sense::kEqual:
        worst = std::max(worst, std::abs(activity - c.rhs));
        break;
    }
  }
  return worst;
}

}  // namespace casemix::solver
