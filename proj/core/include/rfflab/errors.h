// Copyright 2026 The rfflab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef RFFLAB_ERRORS_H_
#define RFFLAB_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rfflab {

// Raised when a caller breaks an operation's preconditions (shape mismatch,
// out-of-range parameter, asymmetric input to a symmetric solver, ...).
class ContractError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A computation produced a non-finite value. `where` is a layer index for
// forward passes and a step index for training loops; -1 when not applicable.
class NumericError : public std::runtime_error {
 public:
  NumericError(const std::string& what, long where = -1)
      : std::runtime_error(what), where_(where) {}
  long where() const { return where_; }

 private:
  long where_;
};

// Malformed or unreadable input files.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void Require(bool condition, const std::string& message) {
  if (!condition) throw ContractError(message);
}

}  // namespace rfflab

#endif  // RFFLAB_ERRORS_H_
