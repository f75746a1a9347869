#pragma once

#include <stdexcept>
#include <string>

namespace robincap {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An argument lies outside the valid range of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

enum class SolverFailure {
    StepUnderflow,
    Overflow,
    BracketExpansion,
    DirichletCrossing,
    SeriesNonConvergence,
    QuadratureNonConvergence,
    ZeroOfProfile,
    SignViolation,
};

const char* toString(SolverFailure kind);

/// A numerical procedure could not produce a trustworthy result.
class SolverError : public Error {
public:
    SolverError(SolverFailure kind, const std::string& what, double where = 0.0)
        : Error(std::string(toString(kind)) + ": " + what), kind_(kind), where_(where) {}

    SolverFailure kind() const noexcept { return kind_; }
    /// Location (θ, λ or n depending on the failure) at which the failure was detected.
    double where() const noexcept { return where_; }

private:
    SolverFailure kind_;
    double where_;
};

}  // namespace robincap
