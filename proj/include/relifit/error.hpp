#pragma once

#include <stdexcept>
#include <string>

namespace relifit {

/// Argument outside the mathematical domain of an operation (e.g. mu > 1).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The bracketed remaining-fault term of a hazard is <= 0: the model is
/// exhausted at that interval.
class FeasibilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operation not defined for the requested model kind.
class UnsupportedKindError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed input file. `row()` is the 1-based physical line number, 0 when
/// the problem is not tied to a line.
class SchemaError : public std::runtime_error {
 public:
  SchemaError(const std::string& what, std::size_t row = 0)
      : std::runtime_error(row == 0 ? what : "line " + std::to_string(row) + ": " + what),
        row_(row) {}

  std::size_t row() const { return row_; }

 private:
  std::size_t row_;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace relifit
