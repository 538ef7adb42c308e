#ifndef MAEIGEN_ERRORS_HPP
#define MAEIGEN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace maeigen {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Bad user input: malformed specs, invalid parameters, contract violations
/// detectable before any numerics run. Maps to CLI exit code 2.
class InvalidInput : public Error {
public:
  using Error::Error;
};

/// An iterative solver ran out of budget. Maps to CLI exit code 1.
class NonConvergence : public Error {
public:
  NonConvergence(const std::string& msg, double residual_, int steps_,
                 std::string diagnostic_ = {})
      : Error(msg), residual(residual_), steps(steps_),
        diagnostic(std::move(diagnostic_)) {}
  double residual = 0.0;
  int steps = 0;
  std::string diagnostic;
};

class NegativeDensity : public InvalidInput {
public:
  using InvalidInput::InvalidInput;
};

class ZeroFunction : public InvalidInput {
public:
  using InvalidInput::InvalidInput;
};

class DegenerateStart : public InvalidInput {
public:
  using InvalidInput::InvalidInput;
};

/// Shooting failed to bracket a sign change of u(R).
class NoBracket : public Error {
public:
  using Error::Error;
};

/// Piecewise-linear input violates the general-position requirement.
class DegeneratePosition : public InvalidInput {
public:
  using InvalidInput::InvalidInput;
};

/// Every probed lambda in the continuation family converged.
class AllSubcritical : public Error {
public:
  using Error::Error;
};

/// No probed lambda in the continuation family converged.
class AllSupercritical : public Error {
public:
  using Error::Error;
};

} // namespace maeigen

#endif
