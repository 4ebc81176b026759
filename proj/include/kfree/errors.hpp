#pragma once

#include <stdexcept>
#include <string>

namespace kfree {

// Error categories used across the library. Everything derives from Error so
// callers (and the CLI) can catch one base type and map it to an exit code.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A requested block or table would exceed the configured memory budget.
struct CapacityError : Error {
    using Error::Error;
};

// An argument lies outside the supported range (sieve coverage, n > 16, ...).
struct RangeError : Error {
    using Error::Error;
};

// Evaluation requested exactly at a pole (s = 1).
struct PoleError : Error {
    using Error::Error;
};

// Argument outside the analytic domain of the formula (Re(s) too small,
// contour radius outside the disk of analyticity, bad node count).
struct DomainError : Error {
    using Error::Error;
};

// A precision contract could not be met (correction depth exhausted,
// cancellation left too few significant digits).
struct PrecisionError : Error {
    using Error::Error;
};

// Disk cache I/O failed or a cache file is malformed.
struct IoError : Error {
    using Error::Error;
};

}  // namespace kfree
