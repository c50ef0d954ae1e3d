#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sharegraph {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed `.trs` text or term literal. Line and column are 1-based.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Well-formed syntax that violates a rewrite-system convention
/// (arity clash, variable left-hand side, fresh right-hand-side variable).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// An operation was called outside its precondition (unknown node,
/// position outside the graph, illegal collapse, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A size or enumeration cap was hit before the operation could finish.
class CapacityError : public Error {
 public:
  using Error::Error;
};

}  // namespace sharegraph
