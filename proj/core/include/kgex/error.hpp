#pragma once

#include <stdexcept>
#include <string>

namespace kgex {

/// Base class for all errors raised by the engine.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed input data (bad triple line, bad JSON record, bad file header).
class ParseError : public Error {
public:
    using Error::Error;
};

/// Lookup of an unknown entity, relation, item, or user.
class LookupError : public Error {
public:
    using Error::Error;
};

/// Invalid configuration values; raised before any work starts.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Failure of an external backend (encoder endpoint, completion endpoint).
class BackendError : public Error {
public:
    using Error::Error;
};

} // namespace kgex
