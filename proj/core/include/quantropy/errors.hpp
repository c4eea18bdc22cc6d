#pragma once

#include <stdexcept>
#include <string>

namespace quantropy {

/// Base class for all numerical failures raised by this library.
/// Precondition violations (bad arguments) use std::invalid_argument instead.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// |Z| underflowed or the sum cancelled to the rounding floor:
/// destructive interference, or actions outside the representable range.
class ZeroPartitionFunction : public Error {
public:
    using Error::Error;
};

/// An action value is NaN or infinite.
class NonFiniteAction : public Error {
public:
    using Error::Error;
};

/// The two log-partition-function evaluations of a central difference
/// straddle a branch cut of the principal logarithm.
class StepTooLarge : public Error {
public:
    using Error::Error;
};

/// A product space would exceed the configured history cap.
class SizeOverflow : public Error {
public:
    using Error::Error;
};

/// Regulator extrapolation did not reach the requested tolerance.
class NoConvergence : public Error {
public:
    using Error::Error;
};

/// The Gaussian integrand grows at infinity (Re(1/alpha) < 0).
class DivergentIntegral : public Error {
public:
    using Error::Error;
};

/// A perturbed amplitude came within 1e-12 of zero, so the logarithm
/// branch cannot be continued smoothly.
class AmplitudeNearZero : public Error {
public:
    using Error::Error;
};

}  // namespace quantropy
