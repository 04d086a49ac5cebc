// Copyright 2026 The Everett Simulator Authors
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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace everett {

/// Base class of everything thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Tensor/operator shapes disagree, or a factor index is out of range.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A requested object would exceed the configured dense-dimension cap.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// A structural invariant failed. `invariant()` names which one
/// ("hermiticity", "normalization", "orthonormality", "unitarity", ...).
class ValidationError : public Error {
 public:
  ValidationError(std::string invariant, const std::string& message)
      : Error("validation error: " + invariant + ": " + message),
        invariant_(std::move(invariant)) {}

  const std::string& invariant() const { return invariant_; }

 private:
  std::string invariant_;
};

/// Scenario configuration text is not well-formed. Positions are 1-based.
class ConfigParseError : public Error {
 public:
  ConfigParseError(std::size_t line, std::size_t column, const std::string& message)
      : Error("parse error at line " + std::to_string(line) + ", column " +
              std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// A query cannot be answered: unknown label, off-grid time, s < t,
/// dead context branch, and similar.
class EvaluationError : public Error {
 public:
  using Error::Error;
};

/// Conditioning on a branch of (numerically) zero weight.
class NullBranchError : public EvaluationError {
 public:
  using EvaluationError::EvaluationError;
};

/// Proposition text is not well-formed. `column()` is 1-based.
class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t column, const std::string& message)
      : Error("syntax error at column " + std::to_string(column) + ": " + message),
        column_(column) {}

  std::size_t column() const { return column_; }

 private:
  std::size_t column_;
};

}  // namespace everett
