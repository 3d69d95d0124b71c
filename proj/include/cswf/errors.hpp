#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace cswf {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid input: parameters outside the supported domain, x outside [-1,1], etc.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Frobenius start at an endpoint is singular (2(n+mu+1-+alpha) = 0 for some n).
class StartSingularity : public DomainError {
public:
    using DomainError::DomainError;
};

/// An iteration or integration that did not reach its target.
class NumericalError : public Error {
public:
    using Error::Error;
};

class NonConvergence : public NumericalError {
public:
    NonConvergence(std::size_t k_max, double err_estimate)
        : NumericalError("theta recurrence did not converge within k_max=" + std::to_string(k_max) +
                         " (error estimate " + std::to_string(err_estimate) + ")"),
          k_max(k_max),
          err_estimate(err_estimate) {}
    std::size_t k_max;
    double err_estimate;
};

class Overflow : public NumericalError {
public:
    explicit Overflow(std::size_t step)
        : NumericalError("theta recurrence overflowed at step k=" + std::to_string(step)), step(step) {}
    Overflow(const std::string& what, std::size_t step) : NumericalError(what), step(step) {}
    std::size_t step;
};

class PoleError : public DomainError {
public:
    explicit PoleError(std::complex<double> z)
        : DomainError("log_gamma: pole at z=" + std::to_string(z.real())), z(z) {}
    std::complex<double> z;
};

/// Secant iteration exhausted its iteration budget.
class NoConvergence : public NumericalError {
public:
    explicit NoConvergence(int iterations, const std::string& detail = {})
        : NumericalError("root refinement did not converge after " + std::to_string(iterations) +
                         " iterations" + (detail.empty() ? "" : ": " + detail)),
          iterations(iterations) {}
    int iterations;
};

/// Secant denominator vanished (f(t0) == f(t1)); the caller has to reseed.
class Stagnation : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// Continuation step landed on a root outside the path-jump bound.
class PathLoss : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class NotAnEigenvalue : public NumericalError {
public:
    explicit NotAnEigenvalue(double residual)
        : NumericalError("lambda is not an eigenvalue: |theta| = " + std::to_string(residual)),
          residual(residual) {}
    double residual;
};

class MatchFailure : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class IntegratorFailure : public NumericalError {
public:
    using NumericalError::NumericalError;
};

}  // namespace cswf
