#pragma once

#include <stdexcept>
#include <string>

namespace tdosc {

// Precondition or parameter-domain violation (bad profile, pole, out-of-range t).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Numerical failure: step underflow, series non-convergence, excessive drift.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Scenario file problems. `field` is a dotted path, `line` is 1-based (0 if unknown).
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, int line, const std::string& message)
      : std::runtime_error(message), field_(std::move(field)), line_(line) {}

  const std::string& field() const noexcept { return field_; }
  int line() const noexcept { return line_; }

 private:
  std::string field_;
  int line_;
};

}  // namespace tdosc
