#pragma once

#include <stdexcept>
#include <string>

namespace scenebench {

// Base class for all recoverable pipeline errors. CLI maps these to exit 1,
// UsageError to exit 2. Internal invariant breaks use std::logic_error.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Invalid argument values: dimension mismatch, degenerate inputs, bad ranges.
class InputError : public Error {
public:
    using Error::Error;
};

// Malformed documents: XML, JSON, label maps.
class ParseError : public Error {
public:
    using Error::Error;
};

// Selection quota cannot be met by the retained pool.
class CapacityError : public Error {
public:
    using Error::Error;
};

// Service unreachable after retries.
class TransportError : public Error {
public:
    using Error::Error;
};

// Service reachable but the response violates the wire contract.
class ProtocolError : public Error {
public:
    using Error::Error;
};

// CLI misuse and stage-ordering violations.
class UsageError : public Error {
public:
    using Error::Error;
};

// Filesystem failures.
class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace scenebench
