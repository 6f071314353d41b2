#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "qlorenz/state.hpp"

namespace qlorenz {

/// Bad input: parameters, settings, or a state outside an operation's domain.
/// The CLI maps this to a usage error.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Base for failures that arise while computing (blow-up, degenerate frames).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A state or derivative left the finite range, or a coordinate exceeded the
/// blow-up threshold. Carries the last finite state and its time (NaN when the
/// failing call has no notion of time).
class BlowUpError : public NumericalError {
 public:
  BlowUpError(const std::string& what, State3 last_state,
              double time = std::numeric_limits<double>::quiet_NaN())
      : NumericalError(what), last_state_(last_state), time_(time) {}

  const State3& last_state() const noexcept { return last_state_; }
  double time() const noexcept { return time_; }

 private:
  State3 last_state_;
  double time_;
};

/// Gram-Schmidt lost a direction: the tangent vectors became dependent.
class DegenerateFrameError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace qlorenz
