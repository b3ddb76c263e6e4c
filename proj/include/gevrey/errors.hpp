#pragma once

#include <stdexcept>
#include <string>

namespace gevrey {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A spectrum, vector, or region description violates its invariants.
struct InvalidSpecError : Error {
    using Error::Error;
};

/// Beta outside the range a theorem admits (e.g. Beurling needs beta > 1).
struct BetaOutOfRangeError : Error {
    using Error::Error;
};

/// A vector is not in the domain of the requested operator function.
struct NotInDomainError : Error {
    using Error::Error;
};

/// An initial vector is not admissible for all t >= 0.
struct NotAdmissibleError : Error {
    using Error::Error;
};

/// |F| cannot be bounded on the spectral tail symbolically.
struct UnboundedTailError : Error {
    using Error::Error;
};

/// A generated adversarial point fails its selection inequality.
struct ConstraintViolationError : Error {
    using Error::Error;
};

/// The sector angle is undefined because the analyticity geometry fails.
struct UndefinedSectorError : Error {
    using Error::Error;
};

/// The hypothesis of the sector proposition does not hold.
struct HypothesisFailedError : Error {
    using Error::Error;
};

/// Regression window too short for a stable fit.
struct WindowTooSmallError : Error {
    using Error::Error;
};

/// Operation not defined for this spectrum variant.
struct UnsupportedSpectrumError : Error {
    using Error::Error;
};

/// Partial sums neither certified convergence nor hit the divergence threshold.
struct InconclusiveDivergenceError : Error {
    using Error::Error;
};

/// A documented precondition of an operation was violated by the caller.
struct PreconditionError : Error {
    using Error::Error;
};

}  // namespace gevrey
