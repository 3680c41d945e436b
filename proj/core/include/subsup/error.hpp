// Copyright 2026 The Authors.
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

#pragma once

#include <stdexcept>
#include <string>

namespace subsup {

enum class ErrorKind {
  kIndexOutOfRange,
  kElementAlreadyPresent,
  kGroundSetTooLarge,
  kGroundSetMismatch,
  kInvalidArgument,
  kPreconditionViolation,
  kUnsupportedMethod,
  kMalformedFile,
  kInvariantViolation,
  kNumerical,
};

const char* to_string(ErrorKind kind);

// Bad input: out-of-range elements, mismatched ground sets, malformed files.
// The CLI maps these to exit code 2.
class ValidationError : public std::invalid_argument {
 public:
  ValidationError(ErrorKind kind, const std::string& what)
      : std::invalid_argument(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Numerical failure: non-positive-definite matrices, non-convergence.
// The CLI maps these to exit code 3.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace subsup
