#pragma once

#include <vector>

#include "quantropy/classicality.hpp"

namespace quantropy {

enum class RegulatorKind { cutoff, damping };

/// Parameters of the two regularizations of the oscillatory Gaussian
/// integral: a hard cutoff [-M, M] pushed to infinity, or an exp(-eps x^2)
/// damping pushed to zero. Levels double M (cutoff) or halve eps (damping).
struct RegulatorSpec {
    RegulatorKind kind = RegulatorKind::damping;
    double cutoff_M = 50.0;
    double epsilon = 1e-3;
    int quadrature_points = 256;
    int extrapolation_levels = 4;
    /// Convergence tolerance, relative to 1 + |estimate|. Zero selects the
    /// per-kind default: 1e-6 damping, 1e-3 cutoff.
    double tolerance = 0.0;

    double effective_tolerance() const;
    void validate() const;
};

/// Integral of exp(-x^2 / 2 alpha) over the line: sqrt(2 pi alpha),
/// principal branch. Requires Re(1/alpha) >= 0, i.e. Re(alpha) >= 0;
/// throws DivergentIntegral otherwise.
Complex gaussian_closed_form(Complex alpha);

struct RegulatorLevelRow {
    int level = 0;
    double regulator_value = 0.0;  // M or eps at this level
    Complex estimate;              // the regulator's estimate at this level
    double abs_error_vs_closed_form = 0.0;
};

struct RegulatedIntegral {
    Complex value;
    double error_estimate = 0.0;  // |last extrapolant - previous|
    std::vector<RegulatorLevelRow> levels;
};

/// Evaluates the regularized integral and extrapolates to the limit.
/// Cutoff mode averages each partial integral with its half-period
/// continuation to quench the endpoint oscillation; damping mode
/// Richardson-extrapolates eps -> 0. Throws NoConvergence when the last
/// two extrapolants disagree beyond the tolerance.
RegulatedIntegral gaussian_regularized_study(Complex alpha,
                                             const RegulatorSpec& spec);

/// The extrapolated value alone.
Complex gaussian_regularized(Complex alpha, const RegulatorSpec& spec);

/// Per-level estimates vs the closed form, for CSV convergence studies.
std::vector<RegulatorLevelRow> convergence_study(Complex alpha,
                                                 const RegulatorSpec& spec);

}  // namespace quantropy
