#pragma once

#include <stdexcept>
#include <string>

namespace minsvd {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Shape or argument validation failure.
class DimensionError : public Error {
public:
    explicit DimensionError(const std::string& msg) : Error(msg) {}
};

/// File parsing or filesystem failure.
class IoError : public Error {
public:
    explicit IoError(const std::string& msg) : Error(msg) {}
};

/// Non-finite data, rank deficiency where full rank is required, or an
/// iteration that failed to make its required numerical guarantees.
class NumericalError : public Error {
public:
    explicit NumericalError(const std::string& msg) : Error(msg) {}
};

/// An iterative method hit its iteration cap without satisfying its
/// stopping criteria where convergence was mandatory.
class ConvergenceError : public Error {
public:
    explicit ConvergenceError(const std::string& msg) : Error(msg) {}
};

} // namespace minsvd
