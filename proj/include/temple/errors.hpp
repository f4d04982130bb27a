#pragma once

#include <stdexcept>
#include <string>

namespace temple {

/// Bad user input: malformed config, degenerate interval, data outside I.
class ValidationError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A proven property of the scheme failed at run time (region breach, TV growth, ...).
class PropertyViolation : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Non-positive stretch produced by an update; only reachable with a broken CFL bound.
class SchemeError : public std::runtime_error {
public:
  SchemeError(const std::string& what, long step)
      : std::runtime_error(what + " (step " + std::to_string(step) + ")"), step_(step) {}
  long step() const noexcept { return step_; }

private:
  long step_;
};

}  // namespace temple
