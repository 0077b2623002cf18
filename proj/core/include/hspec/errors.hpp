#pragma once

#include <stdexcept>
#include <string>

namespace hspec {

/// Base class for all library failures. The CLI maps each subclass to an exit code.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input violates an operation's precondition (exit code 2).
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// A configured resource cap was hit (exit code 3).
class ResourceLimitError : public Error {
public:
    using Error::Error;
};

/// A finite computation could not certify a verdict (exit code 4).
class InconclusiveError : public Error {
public:
    using Error::Error;
};

/// Malformed textual or JSON input (exit code 1).
class ParseError : public Error {
public:
    using Error::Error;
};

}  // namespace hspec
