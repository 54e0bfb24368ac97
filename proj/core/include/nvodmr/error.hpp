#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nvodmr {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Precondition violated by a caller-supplied argument.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Transverse field too strong for first-order mixing coefficients, or a
// level anti-crossing makes a mixing denominator vanish.
class PerturbationError : public Error {
 public:
  PerturbationError(const std::string& what, double ratio)
      : Error(what), ratio_(ratio) {}
  double ratio() const noexcept { return ratio_; }

 private:
  double ratio_;
};

// Rate system with no unique steady state, or a steady state with
// significantly negative populations.
class SolveError : public Error {
 public:
  using Error::Error;
};

// Peak detection found a different number of resonances than required.
class PeakCountError : public Error {
 public:
  PeakCountError(const std::string& what, std::size_t found, std::size_t expected)
      : Error(what), found_(found), expected_(expected) {}
  std::size_t found() const noexcept { return found_; }
  std::size_t expected() const noexcept { return expected_; }

 private:
  std::size_t found_;
  std::size_t expected_;
};

class FitError : public Error {
 public:
  using Error::Error;
};

// Invalid configuration value. `field()` names the offending key.
class ConfigError : public Error {
 public:
  ConfigError(const std::string& field, const std::string& constraint)
      : Error(field + ": " + constraint), field_(field) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace nvodmr
