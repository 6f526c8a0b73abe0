#pragma once

#include <stdexcept>
#include <string>

namespace ringtower {

// Invalid construction data: bad primes, reducible defining polynomials,
// incompatible ring parameters, malformed serializations.
struct config_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// An inversion was requested for an element that is not a unit at the
// certified precision (leading form not invertible, zero divisor, ...).
struct not_invertible : std::domain_error {
    using std::domain_error::domain_error;
};

// A result cannot be certified at the requested precision window, or an
// internal exactness check failed (e.g. a digit peel left a residual that is
// not divisible by p, which would indicate corrupted arithmetic). These are
// loud by design: silent truncation would invalidate the verification suites.
struct precision_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A fractional-exponent operation would need a root denominator beyond the
// declared perfection depth budget.
struct depth_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace ringtower
