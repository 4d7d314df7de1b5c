#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qsp {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Division by zero, or a substitution that makes a denominator vanish.
class ArithmeticError : public Error {
 public:
  using Error::Error;
};

/// A relation that cannot be oriented, or two relations that disagree.
class PresentationError : public Error {
 public:
  using Error::Error;
};

/// Reference to a generator, algebra or operator that does not exist.
class NameError : public Error {
 public:
  using Error::Error;
};

/// An operation applied outside its domain (e.g. partials of a form).
class DomainError : public Error {
 public:
  using Error::Error;
};

class InferenceError : public Error {
 public:
  using Error::Error;
};

class UsageError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t offset)
      : Error(message + " at offset " + std::to_string(offset)), offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

}  // namespace qsp
