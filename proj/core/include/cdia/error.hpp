#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cdia {

// Base for every error raised by the library. The CLI maps the concrete
// subclasses onto exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ArgumentError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class UnsupportedError : public Error {
 public:
  using Error::Error;
};

// Input was well-formed but violates a structural precondition
// (e.g. a Gamma-cycle that is not proper).
class ValidationError : public Error {
 public:
  ValidationError(std::size_t index, const std::string& what)
      : Error(what), index_(index) {}

  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

class CapacityError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace cdia
