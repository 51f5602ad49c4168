// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lpat {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Tensor or parameter shapes disagree.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// A requested input column is absent from a CSV header.
class SchemaError : public Error {
 public:
  explicit SchemaError(const std::string &column)
      : Error("missing column '" + column + "'"), column_(column) {}
  const std::string &column() const noexcept { return column_; }

 private:
  std::string column_;
};

/// A row or line could not be parsed. Carries the 1-based line number.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string &what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Arguments violate a documented precondition.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class FormatError : public Error {
 public:
  using Error::Error;
};

class VersionError : public FormatError {
 public:
  using FormatError::FormatError;
};

class ArchitectureError : public FormatError {
 public:
  using FormatError::FormatError;
};

class TruncatedError : public FormatError {
 public:
  using FormatError::FormatError;
};

}  // namespace lpat
