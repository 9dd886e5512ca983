#pragma once

#include <stdexcept>
#include <string>

namespace rmdirac {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A physical or structural invariant of an input was violated.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Argument lies outside the region where a formula is defined
/// (negative radicand, r outside the potential's interval, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// A closed-form expression hit a pole (Gamma at a nonpositive integer,
/// vanishing Pochhammer denominator, zero quantization denominator).
class PoleError : public DomainError {
public:
    using DomainError::DomainError;
};

/// The bound-state branch condition of a closed form is not met.
class NoBoundStateError : public Error {
public:
    using Error::Error;
};

/// An iterative procedure failed to reach its tolerance.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

/// The finite-difference discretization cannot represent the requested state
/// (wavefunction tail not resolved inside the box).
class DiscretizationError : public Error {
public:
    using Error::Error;
};

}  // namespace rmdirac
