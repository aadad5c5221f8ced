#pragma once

#include <stdexcept>
#include <string>

namespace cohlab {

// Common base so callers can catch anything thrown by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// A parameter is out of its documented domain (non-positive width, bad grid, ...).
class InvalidParameterError : public Error {
public:
    using Error::Error;
};

// The discrete maximum sits on the first or last grid point, so no
// three-point refinement is possible.
class BoundaryPeakError : public Error {
public:
    using Error::Error;
};

// Spectrum carries no usable power (zero or negative integral).
class DegenerateSpectrumError : public Error {
public:
    using Error::Error;
};

// |mu| exceeded 1 beyond numerical slack.
class CoherenceBoundError : public Error {
public:
    using Error::Error;
};

// Cross-spectral density is nonzero where the source spectrum vanishes.
class UndefinedCoherenceError : public Error {
public:
    using Error::Error;
};

// Field-point separation is zero where only the regularized limit exists.
class CoincidenceError : public Error {
public:
    using Error::Error;
};

// Operation requested outside its regime of validity.
class NotApplicableError : public Error {
public:
    using Error::Error;
};

// A collective linewidth collapsed to zero or below.
class DegenerateLinewidthError : public Error {
public:
    using Error::Error;
};

// Linear algebra produced an unphysical or non-finite result.
class NumericalDegeneracyError : public Error {
public:
    using Error::Error;
};

// Query has no meaning for the requested model kind.
class UnsupportedQueryError : public Error {
public:
    using Error::Error;
};

// Iterative refinement failed to reach its target tolerance.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

// Result no longer fits the sampling window even after widening.
class GridTooNarrowError : public Error {
public:
    using Error::Error;
};

// Propagation kernel is singular at the requested distance.
class DegenerateKernelError : public Error {
public:
    using Error::Error;
};

// Correlation matrix violates Hermiticity or positivity.
class InvalidCorrelationError : public Error {
public:
    using Error::Error;
};

// File could not be read, written, or parsed.
class IoError : public Error {
public:
    using Error::Error;
};

// Aggregated configuration complaints (one message listing every problem).
class ValidationError : public Error {
public:
    using Error::Error;
};

} // namespace cohlab
