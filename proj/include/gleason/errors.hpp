// Copyright 2026 The Gleason Toolkit Authors
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

#ifndef GLEASON_ERRORS_HPP
#define GLEASON_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace gleason {

/// Base class of every error thrown by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A vector that was required to be normalized is not.
class NormalizationError : public Error {
 public:
  using Error::Error;
};

/// Operands live in Hilbert spaces of different dimension.
class DimensionMismatch : public Error {
 public:
  DimensionMismatch(int expected, int actual, const std::string& what)
      : Error(what + ": dimension mismatch (expected " +
              std::to_string(expected) + ", got " + std::to_string(actual) +
              ")"),
        expected_(expected),
        actual_(actual) {}

  int expected() const { return expected_; }
  int actual() const { return actual_; }

 private:
  int expected_;
  int actual_;
};

/// A precondition on an argument (index range, rank sum, orthogonality,
/// projector structure, ...) does not hold.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Evaluation was requested at a point where the function is undefined
/// (the origin for radially extended frame functions, or outside the declared
/// domain of a partial measure).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A least-squares design matrix does not determine the unknowns.
class UnderdeterminedError : public Error {
 public:
  UnderdeterminedError(int null_space_dim, const std::string& detail)
      : Error("underdetermined fit: null space of dimension " +
              std::to_string(null_space_dim) +
              (detail.empty() ? std::string() : " (" + detail + ")")),
        null_space_dim_(null_space_dim) {}

  int null_space_dim() const { return null_space_dim_; }

 private:
  int null_space_dim_;
};

/// Reconstructed operator is not a density operator.
class NotAStateError : public Error {
 public:
  NotAStateError(double min_eigenvalue, double trace)
      : Error("not a state: min eigenvalue " + std::to_string(min_eigenvalue) +
              ", trace " + std::to_string(trace)),
        min_eigenvalue_(min_eigenvalue),
        trace_(trace) {}

  double min_eigenvalue() const { return min_eigenvalue_; }
  double trace() const { return trace_; }

 private:
  double min_eigenvalue_;
  double trace_;
};

/// A measurement was queried outside the set a model declares it handles.
class MembershipError : public Error {
 public:
  using Error::Error;
};

/// File could not be read or written; the message names the path.
class IoError : public Error {
 public:
  using Error::Error;
};

/// Syntax or semantic error in measure-spec text, with 1-based position.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, int line, int column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " +
              message),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace gleason

#endif  // GLEASON_ERRORS_HPP
