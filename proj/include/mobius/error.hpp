#pragma once

#include <stdexcept>
#include <string>

namespace mobius {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A request exceeds what a table or evaluator was built for
/// (sieve limit, memory budget, breakpoint cap).
class CapacityError : public Error {
public:
    using Error::Error;
};

/// An argument lies outside the domain of the operation.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Evaluation at the pole s = 1.
class PoleError : public DomainError {
public:
    using DomainError::DomainError;
};

/// |zeta(s)| is not distinguishable from 0 within its evaluation error.
class NearZeroError : public DomainError {
public:
    using DomainError::DomainError;
};

/// The requested tolerance cannot be met within the iteration cap.
class PrecisionError : public Error {
public:
    using Error::Error;
};

/// A root bracket does not contain a sign change.
class BracketError : public Error {
public:
    using Error::Error;
};

}  // namespace mobius
