#pragma once

#include <stdexcept>
#include <string>

namespace sisqsd {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A model or operation parameter outside its domain.
class InvalidParameter : public Error {
public:
    using Error::Error;
};

/// Parameters hitting an exact pole of a closed-form expression.
class SingularParameter : public Error {
public:
    using Error::Error;
};

/// The requested approximation is not defined in this parameter regime.
class InvalidRegime : public Error {
public:
    using Error::Error;
};

/// A PrecisionContext violating its invariants, or exponent-range overflow.
class PrecisionConfigError : public Error {
public:
    using Error::Error;
};

/// Rounding produced a value the algorithm cannot continue from
/// (e.g. negative probability mass).
class PrecisionFailure : public Error {
public:
    using Error::Error;
};

/// An iterative solver hit its iteration cap.
class SolverFailure : public Error {
public:
    SolverFailure(const std::string& what, long iterations, double last_change)
        : Error(what), iterations_(iterations), last_change_(last_change) {}

    [[nodiscard]] long iterations() const { return iterations_; }
    /// Last observed update size (relative, max over components).
    [[nodiscard]] double last_change() const { return last_change_; }

private:
    long iterations_;
    double last_change_;
};

/// Method-of-moments fit without an admissible solution.
class FitFailure : public Error {
public:
    using Error::Error;
};

class LengthMismatch : public Error {
public:
    using Error::Error;
};

/// Invalid or contradictory experiment configuration.
class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace sisqsd
