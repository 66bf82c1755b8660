#pragma once

#include <stdexcept>
#include <string>

namespace longmem {

// Violated precondition on a caller-supplied argument (grid sizes, bandwidths,
// parameter boxes, malformed restriction matrices, ...).
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Malformed external input. `line` is 1-based; 0 when not tied to a line.
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what, long line = 0)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  long line() const noexcept { return line_; }

 private:
  long line_;
};

// Singular or indefinite matrices, degenerate tapers, spectral poles.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// No start of the optimizer produced a positive definite G(d).
class EstimationError : public std::runtime_error {
 public:
  EstimationError(const std::string& what, int starts_tried, int starts_failed)
      : std::runtime_error(what), starts_tried_(starts_tried), starts_failed_(starts_failed) {}
  int starts_tried() const noexcept { return starts_tried_; }
  int starts_failed() const noexcept { return starts_failed_; }

 private:
  int starts_tried_;
  int starts_failed_;
};

}  // namespace longmem
