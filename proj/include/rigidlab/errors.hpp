#pragma once

#include <stdexcept>

namespace rigidlab {

/// A function was evaluated outside its domain (log of a non-positive
/// number, division by zero, ...).
class DomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input violates an operation's precondition.
class PreconditionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Tangent vectors are (numerically) linearly dependent.
class DegenerateError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Two independent computations that must agree did not (a numerical
/// counterexample to the rigidity statement, or a bug).
class ConsistencyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace rigidlab
