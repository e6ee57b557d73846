// errors.hpp: exception hierarchy shared by all modules

#pragma once

#include <stdexcept>
#include <string>

namespace dicke {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Parameter outside its admissible domain (e.g. delta > 1, T <= 0).
class ParameterError : public Error {
public:
    using Error::Error;
};

/// Inputs that are individually valid but do not belong together.
class ConsistencyError : public Error {
public:
    using Error::Error;
};

/// Requested operation is not defined for this regime or subspace.
class UnsupportedError : public Error {
public:
    using Error::Error;
};

/// Numerical failure; carries the residual or deviation that triggered it.
class NumericalError : public Error {
public:
    NumericalError(const std::string& what, double diagnostic)
        : Error(what), diagnostic_(diagnostic) {}
    double diagnostic() const noexcept { return diagnostic_; }

private:
    double diagnostic_;
};

/// Fock truncation ceiling reached before the spectrum converged.
class TruncationError : public NumericalError {
public:
    TruncationError(const std::string& what, double last_deviation, int n_max)
        : NumericalError(what, last_deviation), n_max_(n_max) {}
    int n_max() const noexcept { return n_max_; }

private:
    int n_max_;
};

/// A reference basis does not capture the state it is asked to resolve.
class CoverageError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

}  // namespace dicke
