#pragma once

#include <stdexcept>
#include <string>

namespace hexlat {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A caller-supplied value violates a documented precondition.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Evaluation point lies outside the region where the requested
/// representation is valid (inside a hole, outside the Laurent disc, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Evaluation point coincides with a pole (a lattice point).
class PoleError : public Error {
public:
    using Error::Error;
};

/// Inconsistent sizes between precomputed objects (e.g. too few lattice
/// coefficients for the requested truncation).
class ConfigurationError : public Error {
public:
    using Error::Error;
};

/// A truncated lattice sum has not converged to the requested tolerance.
class PrecisionError : public Error {
public:
    PrecisionError(const std::string& what, double tail_estimate)
        : Error(what), tail_estimate_(tail_estimate) {}

    double tail_estimate() const noexcept { return tail_estimate_; }

private:
    double tail_estimate_;
};

/// Linear solve failed (singular or numerically singular matrix).
class NumericalError : public Error {
public:
    NumericalError(const std::string& what, double rcond)
        : Error(what), rcond_(rcond) {}

    double rcond() const noexcept { return rcond_; }

private:
    double rcond_;
};

/// A computed solution failed its self-check (boundary residual,
/// symmetry zeros).
class ConsistencyError : public Error {
public:
    ConsistencyError(const std::string& what, double residual)
        : Error(what), residual_(residual) {}

    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

/// Homogenization formulas hit a vanishing denominator.
class DegenerateError : public Error {
public:
    using Error::Error;
};

}  // namespace hexlat
