#pragma once

#include <stdexcept>
#include <string>

namespace lhv {

/// Precondition violated by a caller (bad angle, non-unit vector, ...).
class InvalidArgument : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// An estimator was asked for a statistic over zero events.
class EmptySample : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Malformed experiment or run configuration.
class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

}  // namespace lhv
