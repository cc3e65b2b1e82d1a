#pragma once

#include <stdexcept>
#include <string>

namespace gdnls {

// Bad inputs: rejected parameters, malformed configs, mismatched grids.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Thrown by the time steppers when the solution leaves the trust region
// (sup-norm growth past the configured factor, or a non-finite value).
class BlowUpError : public std::runtime_error {
 public:
  BlowUpError(const std::string& what, double last_good_time)
      : std::runtime_error(what), last_good_time(last_good_time) {}
  double last_good_time;
};

}  // namespace gdnls
