#pragma once

#include <stdexcept>
#include <string>

namespace sbi_forge {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Mismatched raster dimensions between operands.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// A parameter outside its admissible domain (lo > hi, even kernel, ...).
class ParameterError : public Error {
 public:
  using Error::Error;
};

// An input that violates an operation's precondition (e.g. a non-binary mask).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Fewer than three landmarks, or all of them collinear.
class DegenerateHullError : public Error {
 public:
  using Error::Error;
};

// Malformed manifest, config or score file. Carries the 1-based line when known.
class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& what, long line = 0)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  long line() const noexcept { return line_; }

 private:
  long line_ = 0;
};

// Recipe from another pipeline version, or with parameters outside their domain.
class RecipeError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace sbi_forge
