#pragma once

#include <stdexcept>
#include <string>

namespace sslfusion {

// Base type for everything thrown by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Caller-supplied parameters or data violate a precondition.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Malformed input file; the message carries file and line context.
class ParseError : public Error {
 public:
  using Error::Error;
  ParseError(const std::string& file, std::size_t line, const std::string& what)
      : Error(file + ":" + std::to_string(line) + ": " + what) {}
};

// An estimator was given too little data to produce a value.
class InsufficientDataError : public Error {
 public:
  using Error::Error;
};

// An internal numerical cross-check failed.
class NumericError : public Error {
 public:
  using Error::Error;
};

}  // namespace sslfusion
