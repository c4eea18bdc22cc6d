#pragma once

#include <array>
#include <string>

#include "quantropy/ensemble.hpp"

namespace quantropy {

/// Time-discretized free particle on a line: n steps of length dt, mass m,
/// measure scale dx (the length unit that makes the path measure
/// dimensionless), Planck constant hbar. Initial position pinned at zero,
/// final position free, so the velocities v_1..v_n are the coordinates.
struct FreeParticleModel {
    int n = 1;
    double mass = 1.0;
    double dt = 1.0;
    double dx_scale = 1.0;
    double hbar = 1.0;

    void validate() const;

    /// K = 2 pi dt / (m dx^2); all dependence of the report on m, dt, dx
    /// goes through this one dimensionless constant.
    double K() const;

    Classicality classicality() const;  // lambda = 1/(i hbar)
};

/// A positive definite quadratic action A(x) = Sum c_i x_i^2 / 2 on R^n
/// with unit measure scale per axis.
struct QuadraticAction {
    std::vector<double> coefficients;
    void validate() const;
};

/// ln Z = (n/2)(Ln K - Ln lambda), principal branches.
Complex log_Z_closed(const FreeParticleModel& model,
                     const Classicality& lambda);

/// <A> = n i hbar / 2, independent of m, dt and dx.
Complex expected_action_closed(const FreeParticleModel& model);

/// Phi = (1/lambda)(n/2)(Ln lambda - Ln K).
Complex free_action_closed(const FreeParticleModel& model,
                           const Classicality& lambda);

/// Q = (n/2)(Ln K - Ln lambda + 1).
Complex quantropy_closed(const FreeParticleModel& model,
                         const Classicality& lambda);

/// All four closed forms as a verified report.
EnsembleReport closed_form_report(const FreeParticleModel& model,
                                  const Classicality& lambda);

/// Closed-form report for a general positive definite quadratic action:
/// ln Z = Sum_i (1/2)(Ln(2 pi / c_i) - Ln lambda), <A> = n/(2 lambda).
EnsembleReport quadratic_action_report(const QuadraticAction& action,
                                       const Classicality& lambda);

/// Velocity grid for one time step: midpoints on [-half_width, half_width],
/// weight (dt/dx) dv exp(-eps v^2), action m v^2 dt / 2.
HistorySpace velocity_axis_space(const FreeParticleModel& model,
                                 double grid_half_width, int grid_points,
                                 double epsilon);

/// The n-axis discretization, built as the n-fold product of the axis grid.
/// eps = 0 is allowed (and only sensible) at real lambda.
HistorySpace quadrature_space(const FreeParticleModel& model,
                              double grid_half_width, int grid_points,
                              double epsilon,
                              std::size_t max_histories = kDefaultMaxHistories);

/// Eight characteristic velocity widths sqrt(hbar / (m dt)).
double default_grid_half_width(const FreeParticleModel& model);

struct QuadratureOptions {
    int grid_points = 2048;
    /// Damping at the first level, in characteristic units; halved per level.
    double epsilon = 0.036;
    int levels = 3;
    /// Evaluate one axis and scale by n instead of building the tensor grid.
    bool factorized = false;
    std::size_t max_histories = kDefaultMaxHistories;
};

struct QuadratureReport {
    EnsembleReport report;
    /// Per-component |last - previous| extrapolant gaps:
    /// [ln Z, <A>, Q, Phi].
    std::array<double, 4> error_estimate{};
};

/// Grid-quadrature report with the damping extrapolated eps -> 0. The grid
/// half-width per level is min(sqrt(pi N)/2, 12/sqrt(eps)) characteristic
/// widths: wide enough that the damped tail is negligible, narrow enough
/// that the midpoint rule still resolves the quadratic phase.
QuadratureReport quadrature_report(const FreeParticleModel& model,
                                   const Classicality& lambda,
                                   const QuadratureOptions& options = {});

/// Model config JSON: {"n":int,"mass":f,"dt":f,"dx":f,"hbar":f}.
FreeParticleModel model_from_json(const std::string& text);
std::string model_to_json(const FreeParticleModel& model);

}  // namespace quantropy
