#pragma once

#include <stdexcept>
#include <string>

namespace idphase {

// Bad input to an operation (dimensions, domains, duplicate indices).
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Requested size exceeds the desk-scale guard.
class ResourceLimit : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Iteration caps, failed factorizations, I/O of numerical artifacts.
class NumericalFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// LP optimum landed strictly between 0 and 1; tolerances are misconfigured.
class AmbiguousOptimum : public NumericalFailure {
public:
    using NumericalFailure::NumericalFailure;
};

// Reduced constraint stack requested for a signature whose S⊙S is not all ones.
class InvalidMode : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class UnsupportedDimension : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace idphase
