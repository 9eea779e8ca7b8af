#pragma once

#include <stdexcept>
#include <string>

namespace qsvm {

/// Base class for all errors raised by the library. The subclass determines
/// the process exit code used by the command-line tool:
///   InputError -> 2, ConfigError -> 3, NumericalError -> 4.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed or inconsistent user data (bad CSV rows, dimension mismatches,
/// zero vectors, labels outside {-1,+1}).
class InputError : public Error {
public:
    explicit InputError(const std::string& what) : Error(what) {}
};

/// A configuration that can be rejected before any simulation runs
/// (decodability bound violated, nonsensical solver parameters).
class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& what) : Error(what) {}
};

/// Requested simulation exceeds the dimension cap of the simulator.
class CapacityError : public ConfigError {
public:
    explicit CapacityError(const std::string& what) : ConfigError(what) {}
};

/// Numerical or degenerate failures detected while computing.
class NumericalError : public Error {
public:
    explicit NumericalError(const std::string& what) : Error(what) {}
};

/// Elimination hit a pivot below the singularity threshold.
class SingularSystemError : public NumericalError {
public:
    SingularSystemError(const std::string& what, int pivot_index)
        : NumericalError(what), pivotIndex(pivot_index) {}
    int pivotIndex;
};

/// Kernel has no positive leading eigenvalue; rank-one analysis undefined.
class DegenerateKernelError : public NumericalError {
public:
    explicit DegenerateKernelError(const std::string& what) : NumericalError(what) {}
};

/// Every eigenvalue branch fell below the filter threshold.
class EmptySolutionError : public NumericalError {
public:
    explicit EmptySolutionError(const std::string& what) : NumericalError(what) {}
};

/// A state or operator failed its own invariant (norm, trace, Hermiticity,
/// positivity). Raised instead of silently renormalizing.
class InvariantViolation : public NumericalError {
public:
    explicit InvariantViolation(const std::string& what) : NumericalError(what) {}
};

}  // namespace qsvm
