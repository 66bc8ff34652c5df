// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace congrig {

/// Base of all library exceptions.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input violates a documented precondition or lies outside the supported scope.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A well-posed computation finished with a negative mathematical answer that
/// the caller asked to be reported as a failure (e.g. no matching prime).
class NegativeResult : public Error {
 public:
  using Error::Error;
};

/// An internal consistency check failed. Should never happen on valid input.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

}  // namespace congrig
