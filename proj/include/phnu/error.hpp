// Copyright 2026 The phnu Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace phnu {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// NU reduction failures.
class NoBranchError : public Error {
 public:
  using Error::Error;
};
class AmbiguousBranchError : public Error {
 public:
  using Error::Error;
};
class UnsupportedSigmaError : public Error {
 public:
  using Error::Error;
};

class IntegrationError : public Error {
 public:
  using Error::Error;
};

// Numerical eigensolver failures.
class BoundaryTruncationError : public Error {
 public:
  using Error::Error;
};
class BracketError : public Error {
 public:
  using Error::Error;
};
class WrongStateError : public Error {
 public:
  using Error::Error;
};

/// Malformed registry or observation input. Carries the 1-based line and the
/// offending field name (empty when the whole line is at fault).
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::string field, const std::string& what)
      : Error("line " + std::to_string(line) +
              (field.empty() ? std::string() : ", field '" + field + "'") +
              ": " + what),
        line_(line),
        field_(std::move(field)) {}

  std::size_t line() const noexcept { return line_; }
  const std::string& field() const noexcept { return field_; }

 private:
  std::size_t line_;
  std::string field_;
};

// Parameter fitting failures.
class UnderdeterminedError : public Error {
 public:
  using Error::Error;
};
class InconsistentDataError : public Error {
 public:
  using Error::Error;
};

}  // namespace phnu
