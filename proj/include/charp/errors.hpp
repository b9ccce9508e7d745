#pragma once

#include <stdexcept>
#include <string>

namespace charp {

// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Violated preconditions (bad arguments, parity gates, ...). CLI exit code 2.
struct PreconditionError : Error {
    using Error::Error;
};

// An enumeration exceeded the configured cap. CLI exit code 3.
struct SearchCapError : Error {
    using Error::Error;
};

// Malformed input files; carries a JSON-pointer-style location.
struct SchemaError : Error {
    SchemaError(const std::string& where, const std::string& what)
        : Error(where + ": " + what), location(where) {}
    std::string location;
};

}  // namespace charp
