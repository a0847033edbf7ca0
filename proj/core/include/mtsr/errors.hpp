#pragma once

#include <stdexcept>
#include <string>

namespace mtsr {

/// Raised for malformed or out-of-range configuration values. `field()` names
/// the offending key so the CLI can report it verbatim.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::runtime_error(field.empty() ? message : field + ": " + message),
        field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// A calibration formula is outside its domain (log argument too small,
/// c >= 1, p == s, ...).
class CalibrationInvalid : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace mtsr
