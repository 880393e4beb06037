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

#include "casemix/solver/lp_writer.hpp"

#include <cctype>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

namespace casemix::solver {
namespace {

// LP names may not start with a digit or '.', and only a small punctuation
// set is allowed.
std::string Sanitize(const std::string& raw, const std::string& fallback) {
  std::string s;
  for (char c : raw) {
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' ||
        c == '[' || c == ']') {
      s += c;
    } else {
      s += '_';
    }
  }
  if (s.empty() || std::isdigit(static_cast<unsigned char>(s[0])) || s[0] == '.') {
    s = fallback + "_" + s;
  }
  return s;
}

std::vector<std::string> UniqueNames(const std::vector<std::string>& raw,
                                     const std::string& prefix) {
  std::vector<std::string> out;
  std::unordered_set<std::string> seen;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    std::string name = Sanitize(raw[i], prefix + std::to_string(i));
    if (!seen.insert(name).second) {
      name = prefix + std::to_string(i) + "_" + name;
      seen.insert(name);
    }
    out.push_back(std::move(name));
  }
  return out;
}

void WriteTerms(std::ostream& out, const std::vector<Term>& terms,
                const std::vector<std::string>& names) {
  if (terms.empty()) {
    out << " 0 " << names.front();
    return;
  }
  for (const Term& t : terms) {
    out << (t.coef < 0 ? " - " : " + ") << std::abs(t.coef) << ' '
        << names[t.var.index];
  }
}

}  // namespace

void WriteLp(const Program& program, std::ostream& out) {
  const auto flags = out.flags();
  const auto precision = out.precision();
  out << std::setprecision(17);

  std::vector<std::string> raw;
  for (const Variable& v : program.variables()) raw.push_back(v.name);
  std::vector<std::string> vars = UniqueNames(raw, "x");
  if (vars.empty()) vars.push_back("x0");
  raw.clear();
  for (const Constraint& c : program.constraints()) raw.push_back(c.name);
  const std::vector<std::string> rows = UniqueNames(raw, "c");

  out << (program.objective_sense() == ObjectiveSense::kMaximize ? "Maximize"
                                                                 : "Minimize")
      << "\n obj:";
  WriteTerms(out, program.objective().terms(), vars);
  out << '\n';
  if (program.objective().constant() != 0.0) {
    out << "\\ objective constant " << program.objective().constant() << '\n';
  }

  out << "Subject To\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Constraint& c = program.constraints()[i];
    out << ' ' << rows[i] << ':';
    WriteTerms(out, c.terms, vars);
    switch (c.sense) {
      case Sense::kLessEqual:
        out << " <= ";
        break;
      case Sense::kGreaterEqual:
        out << " >= ";
        break;
      case Sense::kEqual:
        out << " = ";
        break;
    }
    out << c.rhs << '\n';
  }

  out << "Bounds\n";
  std::vector<std::string> binaries;
  for (int j = 0; j < program.num_variables(); ++j) {
    const Variable& v = program.variables()[j];
    if (v.type == VarType::kBinary) {
      binaries.push_back(vars[j]);
      if (v.lower == 0.0 && v.upper == 1.0) continue;
    }
    const bool lo = std::isfinite(v.lower);
    const bool up = std::isfinite(v.upper);
    if (!lo && !up) {
      out << ' ' << vars[j] << " free\n";
    } else if (lo && up && v.lower == v.upper) {
      out << ' ' << vars[j] << " = " << v.lower << '\n';
    } else {
      out << ' ' << (lo ? (std::ostringstream() << std::setprecision(17) << v.lower).str()
                        : std::string("-inf"))
          << " <= " << vars[j] << " <= "
          << (up ? (std::ostringstream() << std::setprecision(17) << v.upper).str()
                 : std::string("+inf"))
          << '\n';
    }
  }
  if (!binaries.empty()) {
    out << "Binaries\n";
    for (const std::string& b : binaries) out << ' ' << b << '\n';
  }
  out << "End\n";
  out.flags(flags);
  out.precision(precision);
}

std::string ToLpString(const Program& program) {
  std::ostringstream out;
  WriteLp(program, out);
  return out.str();
}

}  // namespace casemix::solver
