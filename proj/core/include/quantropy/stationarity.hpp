#pragma once

#include <cstdint>
#include <vector>

#include "quantropy/ensemble.hpp"

namespace quantropy {

/// Residual of the multiplier equation 1 + ln a(x) + lambda A(x) + mu = 0
/// with mu = Ln Z - 1. Vanishes identically (rounding only) for Feynman
/// weights.
struct LagrangeResidual {
    std::vector<Complex> per_history;
    Complex mu;
    double max_abs = 0.0;
};

LagrangeResidual lagrange_residual(const ComplexEnsemble& ensemble,
                                   const Classicality& lambda);

/// The free-action formulation: stationarity of <A> + (1/lambda) Sum w a b
/// under the normalization constraint alone. Its residual is r_x / lambda
/// with multiplier mu / lambda, so it has the same zero set.
LagrangeResidual free_action_residual(const ComplexEnsemble& ensemble,
                                      const Classicality& lambda);

struct StationarityOptions {
    int trials = 8;
    double t = 1e-4;
    std::uint64_t seed = 42;
};

/// Draws random complex tangent directions delta with Sum w delta = 0 and
/// Sum w delta A = 0, evaluates Q(a + t delta) and Q(a + (t/2) delta) with
/// the branch continued by the principal log of the multiplicative
/// perturbation, and Richardson-fits |dQ| = c1 t + c2 t^2. Returns the
/// largest |c1| seen; it sits at the t^2 rounding scale iff the ensemble
/// is a stationary point of Q under both constraints.
double directional_stationarity(const ComplexEnsemble& ensemble,
                                const Classicality& lambda,
                                const StationarityOptions& options = {});

/// Convenience overload on the Feynman ensemble of `space`.
double directional_stationarity(const HistorySpace& space,
                                const Classicality& lambda,
                                const StationarityOptions& options = {});

}  // namespace quantropy
