// errors.hpp — Exception types thrown by the engine library

#pragma once

#include <stdexcept>
#include <string>

namespace otto {

// A matrix that should be a density matrix, Hermitian or unitary is not.
struct InvalidStateError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Relative entropy with a reference whose support does not cover the state.
struct DivergenceUndefinedError : std::domain_error {
    using std::domain_error::domain_error;
};

// State handed to a stroke in the wrong energy basis / wrong bath kind.
struct BasisAlignmentError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct NonConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace otto
