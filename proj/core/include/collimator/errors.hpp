#pragma once

#include <stdexcept>
#include <string>

namespace collimator {

/// Quaternion input whose norm is too far from 1 to be a rotation.
class InvalidQuaternion : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Widget, session or simulation parameters that violate their invariants.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Trial lifecycle misuse (double begin, confirm without begin, ...).
class ProtocolError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Too few samples for the requested statistic.
class InsufficientData : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed CSV, JSON or frame-protocol input.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace collimator
