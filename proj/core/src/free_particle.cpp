#include "quantropy/free_particle.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "json.hpp"

#include "quantropy/errors.hpp"

namespace quantropy {

namespace {

Complex principal_log(Complex z) { return std::log(z); }

}  // namespace

void FreeParticleModel::validate() const {
    if (n < 1) throw std::invalid_argument("need at least one time step");
    for (double v : {mass, dt, dx_scale, hbar}) {
        if (!(v > 0.0) || !std::isfinite(v)) {
            throw std::invalid_argument(
                "mass, dt, dx and hbar must be positive and finite");
        }
    }
    if (!(K() > 0.0) || !std::isfinite(K())) {
        throw std::invalid_argument("K = 2 pi dt / (m dx^2) out of range");
    }
}

double FreeParticleModel::K() const {
    return 2.0 * std::numbers::pi * dt / (mass * dx_scale * dx_scale);
}

Classicality FreeParticleModel::classicality() const {
    return Classicality::from_hbar(hbar);
}

void QuadraticAction::validate() const {
    if (coefficients.empty()) {
        throw std::invalid_argument("need at least one coefficient");
    }
    for (double c : coefficients) {
        if (!(c > 0.0) || !std::isfinite(c)) {
            throw std::invalid_argument(
                "quadratic action coefficients must be positive (positive "
                "definite form)");
        }
    }
}

Complex log_Z_closed(const FreeParticleModel& model,
                     const Classicality& lambda) {
    model.validate();
    return 0.5 * model.n *
           (std::log(model.K()) - principal_log(lambda.lambda()));
}

Complex expected_action_closed(const FreeParticleModel& model) {
    model.validate();
    return Complex(0.0, 0.5 * model.n * model.hbar);
}

Complex free_action_closed(const FreeParticleModel& model,
                           const Classicality& lambda) {
    model.validate();
    return (0.5 * model.n / lambda.lambda()) *
           (principal_log(lambda.lambda()) - std::log(model.K()));
}

Complex quantropy_closed(const FreeParticleModel& model,
                         const Classicality& lambda) {
    model.validate();
    return 0.5 * model.n *
           (std::log(model.K()) - principal_log(lambda.lambda()) + 1.0);
}

EnsembleReport closed_form_report(const FreeParticleModel& model,
                                  const Classicality& lambda) {
    const Complex log_Z = log_Z_closed(model, lambda);
    // <A> = n/(2 lambda) for any admissible lambda; equals n i hbar / 2 on
    // the quantum boundary lambda = 1/(i hbar).
    const Complex expected = 0.5 * model.n / lambda.lambda();
    return make_report(log_Z, expected, quantropy_closed(model, lambda),
                       -log_Z / lambda.lambda(), lambda);
}

EnsembleReport quadratic_action_report(const QuadraticAction& action,
                                       const Classicality& lambda) {
    action.validate();
    const Complex lam = lambda.lambda();
    const std::size_t n = action.coefficients.size();
    Complex log_Z{0.0, 0.0};
    for (double c : action.coefficients) {
        log_Z += 0.5 * (std::log(2.0 * std::numbers::pi / c) -
                        principal_log(lam));
    }
    const Complex expected = 0.5 * static_cast<double>(n) / lam;
    const Complex q = 0.5 * static_cast<double>(n) + log_Z;
    return make_report(log_Z, expected, q, -log_Z / lam, lambda);
}

HistorySpace velocity_axis_space(const FreeParticleModel& model,
                                 double grid_half_width, int grid_points,
                                 double epsilon) {
    model.validate();
    if (grid_points < 32) {
        throw std::invalid_argument("need at least 32 grid points");
    }
    if (!(grid_half_width > 0.0)) {
        throw std::invalid_argument("grid half-width must be positive");
    }
    if (epsilon < 0.0) {
        throw std::invalid_argument("damping epsilon must be nonnegative");
    }
    const double dv = 2.0 * grid_half_width / grid_points;
    const double measure = model.dt / model.dx_scale;
    std::vector<std::string> ids(grid_points);
    std::vector<double> weights(grid_points);
    std::vector<double> actions(grid_points);
    for (int j = 0; j < grid_points; ++j) {
        const double v = -grid_half_width + (j + 0.5) * dv;
        ids[j] = "v" + std::to_string(j);
        weights[j] = measure * dv * std::exp(-epsilon * v * v);
        actions[j] = 0.5 * model.mass * v * v * model.dt;
    }
    return HistorySpace(std::move(ids), std::move(weights),
                        std::move(actions));
}

HistorySpace quadrature_space(const FreeParticleModel& model,
                              double grid_half_width, int grid_points,
                              double epsilon, std::size_t max_histories) {
    const HistorySpace axis =
        velocity_axis_space(model, grid_half_width, grid_points, epsilon);
    HistorySpace space = axis;
    for (int i = 1; i < model.n; ++i) {
        space = product_space(space, axis, max_histories);
    }
    return space;
}

double default_grid_half_width(const FreeParticleModel& model) {
    return 8.0 * std::sqrt(model.hbar / (model.mass * model.dt));
}

QuadratureReport quadrature_report(const FreeParticleModel& model,
                                   const Classicality& lambda,
                                   const QuadratureOptions& options) {
    model.validate();
    if (options.grid_points < 32 || options.levels < 1) {
        throw std::invalid_argument("need >= 32 grid points and >= 1 level");
    }
    const bool damped = options.epsilon > 0.0;
    if (!damped && !lambda.is_real()) {
        throw std::invalid_argument(
            "undamped velocity grids converge only at real lambda");
    }
    const double characteristic_v =
        std::sqrt(model.hbar / (model.mass * model.dt));
    // Midpoint sums alias once the quadratic phase advances ~pi per cell;
    // sqrt(pi N)/2 characteristic widths keeps the aliasing image outside
    // the grid.
    const double aliasing_cap =
        0.5 * std::sqrt(std::numbers::pi * options.grid_points);

    FreeParticleModel axis_model = model;
    axis_model.n = 1;

    const int levels = damped ? options.levels : 1;
    std::vector<std::vector<Complex>> components(4);
    for (int k = 0; k < levels; ++k) {
        const double eps_level =
            damped ? options.epsilon / std::pow(2.0, k) : 0.0;
        const double half_width =
            damped ? std::min(aliasing_cap, 12.0 / std::sqrt(eps_level)) *
                         characteristic_v
                   : default_grid_half_width(model);
        const double eps_raw =
            eps_level / (characteristic_v * characteristic_v);
        EnsembleReport level_report =
            options.factorized || model.n == 1
                ? report(velocity_axis_space(axis_model, half_width,
                                             options.grid_points, eps_raw),
                         lambda)
                : report(quadrature_space(model, half_width,
                                          options.grid_points, eps_raw,
                                          options.max_histories),
                         lambda);
        double scale = 1.0;
        if ((options.factorized || model.n == 1) && model.n > 1) {
            scale = static_cast<double>(model.n);
        }
        components[0].push_back(scale * level_report.log_Z);
        components[1].push_back(scale * level_report.expected_action);
        components[2].push_back(scale * level_report.quantropy);
        components[3].push_back(scale * level_report.free_action);
    }

    std::array<Complex, 4> extrapolated;
    std::array<double, 4> gaps{};
    for (std::size_t c = 0; c < 4; ++c) {
        std::vector<Complex> prev = components[c];
        Complex corner = prev.back();
        Complex corner_before = corner;
        for (int j = 1; j < levels; ++j) {
            std::vector<Complex> next(prev.size() - 1);
            const double factor = std::pow(2.0, j);
            for (std::size_t i = 0; i + 1 < prev.size(); ++i) {
                next[i] = (factor * prev[i + 1] - prev[i]) / (factor - 1.0);
            }
            corner_before = corner;
            corner = next.back();
            prev = std::move(next);
        }
        extrapolated[c] = corner;
        gaps[c] = levels > 1 ? std::abs(corner - corner_before) : 0.0;
    }
    // Richardson weights sum to one, so the extrapolated quadruple still
    // satisfies the report identities and make_report re-verifies them.
    return QuadratureReport{
        make_report(extrapolated[0], extrapolated[1], extrapolated[2],
                    extrapolated[3], lambda),
        gaps};
}

FreeParticleModel model_from_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("bad model JSON: ") + e.what());
    }
    FreeParticleModel model;
    try {
        model.n = doc.at("n").get<int>();
        model.mass = doc.value("mass", 1.0);
        model.dt = doc.value("dt", 1.0);
        model.dx_scale = doc.value("dx", 1.0);
        model.hbar = doc.value("hbar", 1.0);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("bad model JSON: ") + e.what());
    }
    model.validate();
    return model;
}

std::string model_to_json(const FreeParticleModel& model) {
    nlohmann::ordered_json doc;
    doc["n"] = model.n;
    doc["mass"] = model.mass;
    doc["dt"] = model.dt;
    doc["dx"] = model.dx_scale;
    doc["hbar"] = model.hbar;
    return doc.dump(2) + "\n";
}

}  // namespace quantropy
