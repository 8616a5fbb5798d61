// Copyright 2026 The hqcm authors
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

#ifndef HQCM_ERRORS_HPP
#define HQCM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace hqcm {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string &msg) : std::runtime_error(msg) {}
};

// Shape or size mismatch between operands.
class DimensionError : public Error {
public:
  using Error::Error;
};

// A structural precondition (Hermiticity, normalization, ...) was violated.
class ContractError : public Error {
public:
  using Error::Error;
};

// Input data fails a domain invariant (stochasticity, trace, positivity, ...).
class ValidationError : public Error {
public:
  using Error::Error;
};

// A hybrid matrix carries coherences between distinct pointer states.
class ClassicalityError : public ValidationError {
public:
  ClassicalityError(const std::string &msg, int block_row, int block_col,
                    double magnitude)
      : ValidationError(msg), block_row_(block_row), block_col_(block_col),
        magnitude_(magnitude) {}

  int block_row() const { return block_row_; }
  int block_col() const { return block_col_; }
  double magnitude() const { return magnitude_; }

private:
  int block_row_;
  int block_col_;
  double magnitude_;
};

// Index outside the valid range.
class BoundsError : public Error {
public:
  using Error::Error;
};

// A requested outcome has zero probability and no post-state exists.
class ImpossibleOutcomeError : public Error {
public:
  using Error::Error;
};

// Scenario configuration is malformed or self-inconsistent.
class ConfigError : public Error {
public:
  using Error::Error;
};

// Filesystem failure while reading or writing artifacts.
class IoError : public Error {
public:
  using Error::Error;
};

} // namespace hqcm

#endif
