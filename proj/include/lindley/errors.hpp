#pragma once

#include <stdexcept>
#include <string>

namespace lindley {

// Adaptive quadrature hit its subdivision cap before reaching the requested
// tolerance. Carries the best estimate obtained so far so callers can decide
// whether the partial answer is still useful.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double log_value, double rel_error,
                     int subdivisions)
        : std::runtime_error(what),
          log_value_(log_value),
          rel_error_(rel_error),
          subdivisions_(subdivisions) {}

    double log_value() const { return log_value_; }
    double rel_error() const { return rel_error_; }
    int subdivisions() const { return subdivisions_; }

private:
    double log_value_;
    double rel_error_;
    int subdivisions_;
};

// A computation was given valid inputs but its result is degenerate: every
// Monte Carlo likelihood term underflowed, or a Laplace approximation was
// anchored at a point where the prior density vanishes.
class DegenerateError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A computed value violated an analytic invariant it is required to satisfy
// (for example a Bayes factor exceeding its proven upper bound). Indicates an
// internal numerical fault rather than bad input.
class ConsistencyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace lindley
