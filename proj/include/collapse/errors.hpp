#pragma once

#include <stdexcept>
#include <string>

namespace collapse {

/// Wave packet does not fit the grid (unresolvable width, boundary overlap,
/// or too much probability in the guard band).
struct GeometryError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Per-step norm drift exceeded the configured tolerance; the caller must
/// reduce dt.
struct StepSizeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Numerical breakdown inside an integrator (non-finite values, a_re <= 0,
/// degenerate jump that survives resampling, exhausted step budget).
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// An input violated a documented precondition (e.g. unnormalized state).
struct ContractError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A closed-form expression was evaluated outside its validity window.
struct OutOfValidityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace collapse
