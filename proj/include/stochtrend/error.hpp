#pragma once

#include <stdexcept>
#include <string>

namespace stochtrend {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Difference order outside the supported range (d < 1).
class InvalidOrderError : public Error {
public:
    using Error::Error;
};

/// Sizes that do not fit together, or a series that is too short.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// Argument outside the mathematical domain of a function.
class DomainError : public Error {
public:
    using Error::Error;
};

/// A Cholesky pivot was not strictly positive.
class NotPositiveDefiniteError : public Error {
public:
    NotPositiveDefiniteError(const std::string& what, std::size_t pivot)
        : Error(what), pivot_(pivot) {}
    std::size_t pivot() const noexcept { return pivot_; }

private:
    std::size_t pivot_;
};

/// Missing-data pattern leaves part of the polynomial null space free.
class UnidentifiableTrendError : public Error {
public:
    using Error::Error;
};

/// Autoregressive model that is not causal/stationary.
class ModelError : public Error {
public:
    using Error::Error;
};

/// Input without variation where variation is required.
class DegenerateInputError : public Error {
public:
    using Error::Error;
};

/// Symbol with 2N >= n, so the circulant wraps onto itself.
class SymbolTooWideError : public Error {
public:
    using Error::Error;
};

/// Matrix expected to be symmetric is not.
class SymmetryError : public Error {
public:
    using Error::Error;
};

/// Iterative routine did not converge.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

/// Matrix does not have the required structure.
class ShapeError : public Error {
public:
    using Error::Error;
};

}  // namespace stochtrend
