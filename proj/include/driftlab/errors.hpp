#pragma once

#include <stdexcept>
#include <string>

namespace driftlab {

/// A precondition on user-supplied input was violated.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Every coefficient of a raw objective was zero.
class DegenerateObjectiveError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

/// Requested parameters cannot be realized (e.g. a non-positive gamma).
class UnachievableParamsError : public ValidationError {
public:
    UnachievableParamsError(const std::string& what, double raw_gamma)
        : ValidationError(what), raw_gamma_(raw_gamma) {}
    [[nodiscard]] double raw_gamma() const noexcept { return raw_gamma_; }

private:
    double raw_gamma_;
};

/// An operation was asked to enumerate beyond its exhaustive cap.
class CapExceededError : public std::length_error {
public:
    using std::length_error::length_error;
};

}  // namespace driftlab
