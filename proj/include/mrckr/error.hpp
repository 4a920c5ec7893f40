#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mrckr {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Syntax error in one of the text inputs; line and column are 1-based.
class ParseError : public Error {
 public:
  ParseError(const std::string& msg, std::size_t line, std::size_t column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// An exhaustive procedure was asked to explore more than its configured bound.
class BoundExceeded : public Error {
 public:
  using Error::Error;
};

/// An input or output file could not be opened.
class FileError : public Error {
 public:
  using Error::Error;
};

/// A deadline passed before a search finished.
class Timeout : public Error {
 public:
  using Error::Error;
};

}  // namespace mrckr
