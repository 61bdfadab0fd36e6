#pragma once

#include <stdexcept>
#include <string>

namespace macc {

// Base class for every failure raised by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Out-of-range or malformed parameters.
class ArgumentError : public Error {
public:
    using Error::Error;
};

// A configurable size budget would be exceeded.
class ResourceError : public Error {
public:
    using Error::Error;
};

// A graph condition (C1/C2/C3) required by an operation does not hold.
class ConditionError : public Error {
public:
    using Error::Error;
};

// Random generation gave up after its retry budget.
class GenerationError : public Error {
public:
    using Error::Error;
};

// Design shape the caching scheme cannot use (e.g. cross intersection > 1).
class UnsupportedDesignError : public Error {
public:
    using Error::Error;
};

// A rival scheme's formula is not defined at the requested parameters.
class ApplicabilityError : public Error {
public:
    using Error::Error;
};

// Internal consistency check failed; indicates a bug.
class InvariantError : public Error {
public:
    using Error::Error;
};

}  // namespace macc
