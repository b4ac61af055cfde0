#pragma once

#include <stdexcept>
#include <string>

namespace spinebal {

// Base for every error raised by the library. The CLI maps the concrete
// subclasses onto process exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Non-finite or otherwise meaningless numeric input.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Finite input outside the modelled range (e.g. flexion beyond +-pi/2).
class RangeError : public Error {
 public:
  using Error::Error;
};

// The two stance footholds coincide, so no support line exists.
class DegenerateSupportError : public Error {
 public:
  using Error::Error;
};

// Bracketed root search found no sign change.
class NoRootError : public Error {
 public:
  NoRootError(const std::string& what, double dis_lo, double dis_hi)
      : Error(what), dis_lo_(dis_lo), dis_hi_(dis_hi) {}

  double dis_lo() const { return dis_lo_; }
  double dis_hi() const { return dis_hi_; }

 private:
  double dis_lo_;
  double dis_hi_;
};

// Invalid controller parameters (e.g. balance target above the amplitude).
class ParameterError : public Error {
 public:
  using Error::Error;
};

// Controller stepped off its fixed time grid.
class SteppingError : public Error {
 public:
  using Error::Error;
};

// Invalid or inconsistent experiment configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Malformed trace or sidecar content.
class ParseError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace spinebal
