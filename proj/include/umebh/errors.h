// Copyright 2026 The umebh Authors
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

#ifndef UMEBH_ERRORS_H_
#define UMEBH_ERRORS_H_

#include <cstdint>
#include <stdexcept>
#include <string>

namespace umebh {

// Operand shapes disagree (e.g. trace_inner on matrices of different size).
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Integer parameter outside its domain (d < 2, n < 1, ...), or non-finite
// input.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Matrix has the wrong number of rows/columns for the operation.
class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A documented precondition (orthonormal basis, unitary input) is violated.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Orthogonal complement does not have the dimension the operation needs.
class RankError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Exhaustive enumeration would exceed the candidate budget.
class BudgetError : public std::runtime_error {
 public:
  BudgetError(const std::string& what, std::uint64_t required)
      : std::runtime_error(what), required_(required) {}
  std::uint64_t required() const { return required_; }

 private:
  std::uint64_t required_;
};

// A result that must hold mathematically failed a numerical re-check.
class InternalConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Input matrix failed the partial Hadamard invariants.
class VerificationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace umebh

#endif  // UMEBH_ERRORS_H_
