#pragma once

#include <stdexcept>
#include <string>

namespace zetalab {

// Base class for every numerical or contract failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A caller-supplied parameter violates an operation's precondition. The
// message names the violated constraint.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// A series or refinement budget ran out before the requested accuracy.
class NonConvergence : public Error {
 public:
  using Error::Error;
};

// Continuation of log zeta could not keep consecutive arguments within pi/2,
// which signals a zero too close to the tracking path.
class BranchTrackingFailure : public Error {
 public:
  using Error::Error;
};

class QuadratureBudgetExceeded : public Error {
 public:
  using Error::Error;
};

// The premise of the self-improvement inequality fails on the sample grid.
class HypothesisViolated : public Error {
 public:
  using Error::Error;
};

inline void require(bool ok, const std::string& constraint) {
  if (!ok) throw InvalidArgument("precondition violated: " + constraint);
}

}  // namespace zetalab
