#pragma once

#include <stdexcept>
#include <string>

namespace cohmax {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A matrix or vector violates a state invariant (Hermiticity, trace, positivity).
class InvalidStateError : public Error {
public:
    using Error::Error;
};

// Dimensions do not line up.
class ShapeError : public Error {
public:
    using Error::Error;
};

// An iterative routine failed to converge.
class NumericalError : public Error {
public:
    using Error::Error;
};

// Argument outside the domain of the operation (e.g. d = 0).
class DomainError : public Error {
public:
    using Error::Error;
};

// Request exceeds what an exhaustive routine is willing to do.
class CapabilityError : public Error {
public:
    using Error::Error;
};

// Malformed input file or flag value.
class ParseError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace cohmax
