#pragma once

#include <stdexcept>
#include <string>

namespace helewave {

/// Argument outside the supported domain of a numerical routine.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The boundary curve is too close to the origin or has a vanishing
/// arclength element, so curvature and kernels cannot be evaluated.
class DegenerateCurveError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Training could not find an admissible step after all retries.
class UnrecoverableDegeneracy : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed experiment configuration. Carries the offending line (0 if
/// not line-specific) and key.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& what, int line = 0, std::string key = {})
      : std::runtime_error(what), line_(line), key_(std::move(key)) {}

  int line() const noexcept { return line_; }
  const std::string& key() const noexcept { return key_; }

 private:
  int line_;
  std::string key_;
};

}  // namespace helewave
