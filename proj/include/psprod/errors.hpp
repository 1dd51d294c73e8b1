#pragma once

#include <stdexcept>

namespace psprod {

// Base class for all toolkit errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Requested tables or sweep would exceed a configured capacity limit.
struct CapacityError : Error {
    using Error::Error;
};

// An inverse mod q was requested for x with gcd(x, q) != 1.
struct NoInverseError : Error {
    using Error::Error;
};

// A residue a with gcd(a, q) != 1 (or a outside [1, q]) was passed to an
// operation that requires a reduced residue class.
struct InvalidResidueError : Error {
    using Error::Error;
};

// Regime classification needs log P > 1 (i.e. P >= 3) whenever q > 1.
struct DegenerateRangeError : Error {
    using Error::Error;
};

// A point-set statistic was requested for an empty point set.
struct EmptySequenceError : Error {
    using Error::Error;
};

} // namespace psprod
