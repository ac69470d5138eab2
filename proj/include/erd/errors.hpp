#pragma once

#include <stdexcept>
#include <string>

namespace erd {

// Error taxonomy shared by every module. The C API maps each type to a
// status code; the CLI prints the message and exits nonzero.

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Dimension mismatch in linear algebra or model wiring.
struct ShapeError : Error {
    using Error::Error;
};

// Bad argument value (rates out of range, empty input, ...).
struct ArgumentError : Error {
    using Error::Error;
};

// Malformed file contents; carries a line number where applicable.
struct ParseError : Error {
    using Error::Error;
};

// Data that parses but violates an invariant (duplicate ids, label out of
// {0,1}, too few events, ...).
struct ValidationError : Error {
    using Error::Error;
};

// Non-finite values where finite ones are required.
struct NumericError : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

}  // namespace erd
