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

#ifndef CASEMIX_ERROR_HPP_
#define CASEMIX_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <utility>

namespace casemix {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid input data. `path` is a JSON-pointer-style location ("/groups/3")
// when the error can be traced to a document position, empty otherwise.
class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& message, std::string path = {})
      : Error(path.empty() ? message : path + ": " + message),
        path_(std::move(path)),
        detail_(message) {}

  const std::string& path() const noexcept { return path_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::string path_;
  std::string detail_;
};

// The optimization backend failed or reported a state the caller did not
// expect (unbounded model, node limit, numerical trouble).
class SolverError : public Error {
 public:
  using Error::Error;
};

// Argument outside the domain of a function (e.g. a utility evaluated beyond
// its upper bound).
class DomainError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace casemix

#endif  // CASEMIX_ERROR_HPP_
