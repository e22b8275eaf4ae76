#pragma once

#include <stdexcept>
#include <string>

namespace qbf {

/// Operand shapes do not agree.
class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A complex matrix does not have the block layout of a quaternion adjoint.
class StructureError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Requested factor width is smaller than the rank of the matrix.
class InfeasibleError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Factorization or decomposition failed (singular, indefinite, inconsistent).
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Non-finite values appeared in an ADMM iterate.
class DivergedError : public NumericalError {
public:
    DivergedError(int iteration, const std::string& what)
        : NumericalError(what), iteration_(iteration) {}

    int iteration() const noexcept { return iteration_; }

private:
    int iteration_;
};

} // namespace qbf
