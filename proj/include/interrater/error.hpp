#pragma once

#include <stdexcept>

namespace interrater {

// Base class for every typed failure raised by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Invalid configuration input: categories file contents, simulation model
// parameters, highlight pairs.
struct ConfigError : Error {
    using Error::Error;
};

// Malformed or unreadable data file: ragged rows, empty file, bad path.
struct ParseError : Error {
    using Error::Error;
};

// A complete-case reduction produced zero rows; the requested statistic has
// no data to stand on.
struct EmptyOverlap : Error {
    using Error::Error;
};

// Chance agreement is numerically 1 (single-category data); kappa undefined.
struct DegenerateMarginals : Error {
    using Error::Error;
};

// Bad command-line invocation.
struct UsageError : Error {
    using Error::Error;
};

}  // namespace interrater
