#pragma once

#include <stdexcept>
#include <string>

namespace gral {

/// Base class for everything this library throws.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A required input file is missing or unreadable.
struct LoadError : Error {
    using Error::Error;
};

/// Malformed file content; message carries the offending line number.
struct ParseError : Error {
    using Error::Error;
};

/// Files disagree with each other (e.g. meta vs. node count).
struct ConsistencyError : Error {
    using Error::Error;
};

/// Invalid experiment configuration.
struct ConfigError : Error {
    using Error::Error;
};

/// Matrix shapes do not line up.
struct DimensionError : Error {
    using Error::Error;
};

/// A documented precondition was violated by the caller.
struct ContractViolation : Error {
    using Error::Error;
};

/// An iterative method failed to converge within its iteration cap.
struct ConvergenceError : Error {
    using Error::Error;
};

/// Training produced a non-finite loss; message carries the epoch.
struct TrainingError : Error {
    using Error::Error;
};

/// A statistic is undefined for this input (e.g. homophily with no edges).
struct UndefinedStatistic : Error {
    using Error::Error;
};

inline void check(bool cond, const std::string& msg) {
    if (!cond) throw ContractViolation(msg);
}

}  // namespace gral
