#pragma once

#include <stdexcept>
#include <string>

namespace redsim {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Parameter-vector / matrix shape mismatch.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// Malformed domain value (invalid token sequence, bad range, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Config file problems; message carries key name and line number.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Non-finite loss observed during gradient estimation.
class EstimationError : public Error {
 public:
  EstimationError(const std::string& msg, double loss_plus, double loss_minus)
      : Error(msg), loss_plus(loss_plus), loss_minus(loss_minus) {}
  explicit EstimationError(const std::string& msg)
      : EstimationError(msg, 0.0, 0.0) {}
  double loss_plus;
  double loss_minus;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace redsim
