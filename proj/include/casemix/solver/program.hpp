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

#ifndef CASEMIX_SOLVER_PROGRAM_HPP_
#define CASEMIX_SOLVER_PROGRAM_HPP_

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace casemix::solver {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Index of a variable inside one Program. Only meaningful for the program
// that created it.
struct VarId {
  int index = -1;

  bool valid() const { return index >= 0; }
  friend bool operator==(VarId, VarId) = default;
};

enum class VarType { kContinuous, kBinary };

struct Variable {
  std::string name;
  double lower = 0.0;
  double upper = kInfinity;
  VarType type = VarType::kContinuous;
};

struct Term {
  VarId var;
  double coef = 0.0;
};

// Sparse affine expression sum(coef * var) + constant.
class LinearExpr {
 public:
  LinearExpr() = default;
  LinearExpr(VarId var, double coef = 1.0) { terms_.push_back({var, coef}); }  // NOLINT

  static LinearExpr Constant(double value) {
    LinearExpr e;
    e.constant_ = value;
    return e;
  }

  LinearExpr& Add(VarId var, double coef) {
    if (coef != 0.0) terms_.push_back({var, coef});
    return *this;
  }
  LinearExpr& Add(const LinearExpr& other, double scale = 1.0);
  LinearExpr& AddConstant(double value) {
    constant_ += value;
    return *this;
  }

  const std::vector<Term>& terms() const { return terms_; }
  double constant() const { return constant_; }

  // Merges duplicate variables and drops zero coefficients.
  LinearExpr Normalized() const;

  double Evaluate(const std::vector<double>& values) const;

 private:
  std::vector<Term> terms_;
  double constant_ = 0.0;
};

enum class Sense { kLessEqual, kGreaterEqual, kEqual };

struct Constraint {
  std::string name;
  std::vector<Term> terms;
  Sense sense = Sense::kLessEqual;
  double rhs = 0.0;
};

enum class ObjectiveSense { kMaximize, kMinimize };

// A linear or mixed-binary program: continuous and binary variables with
// bounds, sparse linear rows and a linear objective.
class Program {
 public:
  VarId AddVariable(std::string name, double lower = 0.0,
                    double upper = kInfinity,
                    VarType type = VarType::kContinuous);
  VarId AddBinary(std::string name) {
    return AddVariable(std::move(name), 0.0, 1.0, VarType::kBinary);
  }

  // Adds `expr sense rhs`; the expression constant is moved to the rhs.
  int AddConstraint(std::string name, const LinearExpr& expr, Sense sense,
                    double rhs);

  void SetObjective(ObjectiveSense sense, const LinearExpr& expr);
  void SetVariableBounds(VarId var, double lower, double upper);

  // Optional full assignment tried as a starting incumbent.
  void SetHint(std::vector<double> values) { hint_ = std::move(values); }
  const std::optional<std::vector<double>>& hint() const { return hint_; }

  int num_variables() const { return static_cast<int>(variables_.size()); }
  int num_constraints() const { return static_cast<int>(constraints_.size()); }
  int num_binaries() const;
  bool is_mip() const { return num_binaries() > 0; }

  const Variable& variable(VarId var) const { return variables_.at(var.index); }
  const std::vector<Variable>& variables() const { return variables_; }
  const std::vector<Constraint>& constraints() const { return constraints_; }
  ObjectiveSense objective_sense() const { return objective_sense_; }
  const LinearExpr& objective() const { return objective_; }

  // Throws SolverError when a term references an undeclared variable, a
  // coefficient is not finite, or bounds are inverted.
  void Validate() const;

  // Largest absolute violation of bounds, rows and integrality by `values`.
  double MaxViolation(const std::vector<double>& values) const;

 private:
  std::vector<Variable> variables_;
  std::vector<Constraint> constraints_;
  ObjectiveSense objective_sense_ = ObjectiveSense::kMaximize;
  LinearExpr objective_;
  std::optional<std::vector<double>> hint_;
};

}  // namespace casemix::solver

#endif  // CASEMIX_SOLVER_PROGRAM_HPP_
