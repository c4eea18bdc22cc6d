#include "quantropy/verification.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "quantropy/ensemble.hpp"
#include "quantropy/free_particle.hpp"
#include "quantropy/oscillatory.hpp"
#include "quantropy/stationarity.hpp"
#include "quantropy/thermo.hpp"

namespace quantropy {

namespace {

Classicality pick_classicality(CounterRng& rng, int index) {
    switch (index % 3) {
        case 0:
            return Classicality::from_beta(rng.uniform(0.25, 4.0));
        case 1:
            return Classicality::from_hbar(rng.uniform(0.8, 4.0));
        default: {
            // Interior of the half-plane, modulus in [0.25, 1.25].
            const double r = rng.uniform(0.25, 1.25);
            const double theta = rng.uniform(-1.4, 1.4);
            return Classicality::from_lambda(
                r * Complex(std::cos(theta), std::sin(theta)));
        }
    }
}

ComplexEnsemble perturbed_ensemble(const HistorySpace& space,
                                   const Classicality& lambda,
                                   CounterRng& rng, double magnitude) {
    const ComplexEnsemble feynman = feynman_weights(space, lambda);
    std::vector<Complex> amplitudes(feynman.amplitudes().begin(),
                                    feynman.amplitudes().end());
    for (auto& a : amplitudes) a *= 1.0 + magnitude * rng.uniform(-1.0, 1.0);
    Complex norm{0.0, 0.0};
    for (std::size_t i = 0; i < space.size(); ++i) {
        norm += space.weights()[i] * amplitudes[i];
    }
    std::vector<Complex> logs(amplitudes.size());
    for (std::size_t i = 0; i < amplitudes.size(); ++i) {
        amplitudes[i] /= norm;
        logs[i] = std::log(amplitudes[i]);
    }
    return ComplexEnsemble(space, std::move(amplitudes), std::move(logs));
}

void push(SuiteResult& result, const std::string& name, double value) {
    result.metrics.emplace_back(name, value);
}

void fail(SuiteResult& result, const std::string& message) {
    result.passed = false;
    if (!result.detail.empty()) result.detail += "; ";
    result.detail += message;
}

}  // namespace

double VerifyOptions::tol(const std::string& name, double fallback) const {
    const auto it = tolerances.find(name);
    return it == tolerances.end() ? fallback : it->second;
}

HistorySpace random_space(CounterRng& rng, std::size_t max_size) {
    const std::size_t size = 3 + rng.below(std::max<std::size_t>(max_size, 3) - 2);
    std::vector<std::string> ids(size);
    std::vector<double> weights(size);
    std::vector<double> actions(size);
    for (std::size_t i = 0; i < size; ++i) {
        ids[i] = "h" + std::to_string(i);
        weights[i] = rng.uniform(0.5, 2.0);
        actions[i] = rng.uniform(-1.0, 1.0);
    }
    return HistorySpace(std::move(ids), std::move(weights),
                        std::move(actions));
}

SuiteResult run_stationarity_suite(const VerifyOptions& options) {
    SuiteResult result;
    result.name = "stationarity";
    result.passed = true;

    const double tol_residual = options.tol("residual", 1e-11);
    const double tol_linear = options.tol("linear_coeff", 1e-8);
    constexpr int kSpaces = 50;
    constexpr int kTrials = 4;

    CounterRng rng(options.seed, /*stream=*/1);
    double max_residual = 0.0;
    double max_linear = 0.0;
    for (int i = 0; i < kSpaces; ++i) {
        const HistorySpace space = random_space(rng, 32);
        const Classicality lambda = pick_classicality(rng, i);
        const ComplexEnsemble ensemble =
            options.negative_control
                ? perturbed_ensemble(space, lambda, rng, 0.10)
                : feynman_weights(space, lambda);

        max_residual = std::max(
            max_residual, lagrange_residual(ensemble, lambda).max_abs);

        StationarityOptions stat;
        stat.trials = kTrials;
        stat.seed = options.seed + static_cast<std::uint64_t>(i);
        max_linear = std::max(
            max_linear, directional_stationarity(ensemble, lambda, stat));
    }

    push(result, "residual_max", max_residual);
    push(result, "residual_tolerance", tol_residual);
    push(result, "linear_coeff_max", max_linear);
    push(result, "linear_coeff_tolerance", tol_linear);
    push(result, "trials", kSpaces * kTrials);
    push(result, "seed", static_cast<double>(options.seed));

    if (max_residual > tol_residual) {
        std::ostringstream msg;
        msg << "Lagrange residual " << max_residual << " exceeds "
            << tol_residual;
        fail(result, msg.str());
    }
    if (max_linear > tol_linear) {
        std::ostringstream msg;
        msg << "first-order coefficient " << max_linear << " exceeds "
            << tol_linear;
        fail(result, msg.str());
    }
    return result;
}

SuiteResult run_identity_suite(const VerifyOptions& options) {
    SuiteResult result;
    result.name = "identity";
    result.passed = true;

    const double tol_exact = options.tol("identity", 1e-10);
    const double tol_numeric = options.tol("identity_numeric", 1e-6);

    CounterRng rng(options.seed, /*stream=*/2);
    double max_exact = 0.0;
    double max_numeric = 0.0;

    const auto check_exact = [&](const EnsembleReport& rep) {
        const Complex lam = rep.lambda.lambda();
        max_exact = std::max(
            max_exact,
            std::abs(rep.quantropy - (lam * rep.expected_action + rep.log_Z)));
        max_exact =
            std::max(max_exact, std::abs(rep.free_action + rep.log_Z / lam));
    };

    // Finite random spaces: summed and derivative routes.
    for (int i = 0; i < 25; ++i) {
        const HistorySpace space = random_space(rng, 32);
        const Classicality lambda = pick_classicality(rng, i);
        const EnsembleReport rep = report(space, lambda);
        check_exact(rep);
        const Complex derivative =
            expected_action_via_derivative(space, lambda);
        const Complex q_from_derivative =
            rep.log_Z + lambda.lambda() * derivative;
        max_numeric = std::max(
            max_numeric, std::abs(rep.quantropy - q_from_derivative) /
                             (1.0 + std::abs(rep.quantropy)));
    }

    // Closed-form report paths.
    for (int i = 0; i < 10; ++i) {
        FreeParticleModel model;
        model.n = 1 + static_cast<int>(rng.below(8));
        model.mass = rng.uniform(0.3, 3.0);
        model.dt = rng.uniform(0.3, 3.0);
        model.dx_scale = rng.uniform(0.3, 3.0);
        model.hbar = rng.uniform(0.3, 3.0);
        const Classicality lambda =
            i % 2 == 0 ? model.classicality() : pick_classicality(rng, i);
        const EnsembleReport rep = closed_form_report(model, lambda);
        check_exact(rep);
        const Complex derivative = expected_action_from_log_z(
            [&model](Complex lam) {
                return log_Z_closed(model, Classicality::from_lambda(lam));
            },
            lambda);
        max_numeric = std::max(
            max_numeric,
            std::abs(rep.quantropy - (rep.log_Z + lambda.lambda() * derivative)) /
                (1.0 + std::abs(rep.quantropy)));

        QuadraticAction action;
        const std::size_t dims = 1 + rng.below(12);
        for (std::size_t d = 0; d < dims; ++d) {
            action.coefficients.push_back(rng.uniform(0.2, 5.0));
        }
        check_exact(quadratic_action_report(action, lambda));
    }

    // One small quadrature path per kind of classicality.
    {
        FreeParticleModel model;
        QuadratureOptions quad;
        quad.grid_points = 512;
        quad.levels = 2;
        quad.epsilon = 0.06;
        check_exact(quadrature_report(model, model.classicality(), quad).report);
        QuadratureOptions real_quad;
        real_quad.grid_points = 512;
        real_quad.levels = 1;
        real_quad.epsilon = 0.0;
        check_exact(
            quadrature_report(model, Classicality::from_beta(1.0), real_quad)
                .report);
    }

    push(result, "identity_max", max_exact);
    push(result, "identity_tolerance", tol_exact);
    push(result, "identity_numeric_max", max_numeric);
    push(result, "identity_numeric_tolerance", tol_numeric);

    if (max_exact > tol_exact) {
        std::ostringstream msg;
        msg << "exact identity residual " << max_exact << " exceeds "
            << tol_exact;
        fail(result, msg.str());
    }
    if (max_numeric > tol_numeric) {
        std::ostringstream msg;
        msg << "numeric-derivative identity residual " << max_numeric
            << " exceeds " << tol_numeric;
        fail(result, msg.str());
    }
    return result;
}

SuiteResult run_factorization_suite(const VerifyOptions& options) {
    SuiteResult result;
    result.name = "factorization";
    result.passed = true;

    const double tol = options.tol("factorization", 1e-9);
    constexpr double kTwoPi = 2.0 * std::numbers::pi;

    CounterRng rng(options.seed, /*stream=*/3);
    double max_deviation = 0.0;
    double max_expected_action_deviation = 0.0;
    int wrap_events = 0;

    for (int i = 0; i < 20; ++i) {
        const HistorySpace s1 = random_space(rng, 24);
        const HistorySpace s2 = random_space(rng, 24);
        const Classicality lambda = pick_classicality(rng, i);
        const HistorySpace prod = product_space(s1, s2);

        const EnsembleReport r1 = report(s1, lambda);
        const EnsembleReport r2 = report(s2, lambda);
        const EnsembleReport rp = report(prod, lambda);

        max_expected_action_deviation =
            std::max(max_expected_action_deviation,
                     std::abs(rp.expected_action -
                              (r1.expected_action + r2.expected_action)));

        // ln Z and Q add up to the principal-branch wrap of Ln(Z1 Z2).
        const Complex lnz_gap = rp.log_Z - (r1.log_Z + r2.log_Z);
        const double k = std::round(lnz_gap.imag() / kTwoPi);
        if (k != 0.0) ++wrap_events;
        max_deviation =
            std::max(max_deviation,
                     std::abs(lnz_gap - Complex(0.0, k * kTwoPi)));

        const Complex q_gap = rp.quantropy - (r1.quantropy + r2.quantropy);
        max_deviation = std::max(
            max_deviation, std::abs(q_gap - Complex(0.0, k * kTwoPi)));
        if (k == 0.0) {
            max_deviation = std::max(max_deviation, std::abs(q_gap));
        }
    }

    push(result, "factorization_max", max_deviation);
    push(result, "expected_action_additivity_max",
         max_expected_action_deviation);
    push(result, "wrap_events", wrap_events);
    push(result, "tolerance", tol);

    if (max_deviation > tol || max_expected_action_deviation > 1e-12) {
        std::ostringstream msg;
        msg << "factorization deviation " << max_deviation << " / "
            << max_expected_action_deviation << " exceeds " << tol;
        fail(result, msg.str());
    }
    return result;
}

SuiteResult run_cross_engine_suite(const VerifyOptions& options) {
    SuiteResult result;
    result.name = "cross_engine";
    result.passed = true;

    const double tol = options.tol("cross_engine", 1e-12);
    CounterRng rng(options.seed, /*stream=*/4);

    double max_gap = 0.0;
    for (int i = 0; i < 50; ++i) {
        const HistorySpace space = random_space(rng, 32);
        const double beta = rng.uniform(0.1, 10.0);
        const EnsembleReport quantum =
            report(space, analogy_substitution(beta));
        const ThermalReport thermal = boltzmann_report(space, beta);
        const auto gap = [](Complex q, double t) {
            return std::max(std::abs(q.real() - t), std::abs(q.imag()));
        };
        max_gap = std::max({max_gap, gap(quantum.log_Z, thermal.log_Z),
                            gap(quantum.expected_action, thermal.expected_energy),
                            gap(quantum.quantropy, thermal.entropy),
                            gap(quantum.free_action, thermal.free_energy)});
        if (!check_analogy(space, beta, tol)) {
            fail(result, "check_analogy returned false");
        }
    }

    // Equipartition: the Gaussian closed form must reproduce (d/2) n T
    // exactly.
    double max_gas_gap = 0.0;
    for (const double T : {0.5, 1.0, 2.0, 4.0}) {
        for (const int particles : {1, 2, 5}) {
            QuadraticAction gas;
            gas.coefficients.assign(3 * particles, 1.0);
            const EnsembleReport rep = quadratic_action_report(
                gas, Classicality::from_beta(1.0 / T));
            const double gap = std::abs(
                rep.expected_action.real() -
                ideal_gas_expected_energy(particles, 3, T));
            max_gas_gap =
                std::max({max_gas_gap, gap,
                          std::abs(rep.expected_action.imag())});
        }
    }

    push(result, "cross_engine_max", max_gap);
    push(result, "ideal_gas_max", max_gas_gap);
    push(result, "tolerance", tol);

    if (max_gap > tol) {
        std::ostringstream msg;
        msg << "engine disagreement " << max_gap << " exceeds " << tol;
        fail(result, msg.str());
    }
    if (max_gas_gap != 0.0) {
        fail(result, "ideal gas expected energy not reproduced exactly");
    }
    return result;
}

SuiteResult run_regulator_suite(const VerifyOptions& options) {
    SuiteResult result;
    result.name = "regulator";
    result.passed = true;

    const double tol_damping = options.tol("damping", 1e-4);
    const double tol_cutoff = options.tol("cutoff", 1e-3);

    CounterRng rng(options.seed, /*stream=*/5);
    std::vector<Complex> alphas{Complex(0.0, 1.0)};
    for (int i = 0; i < 10; ++i) {
        const double modulus = std::pow(10.0, rng.uniform(-1.0, 1.0));
        const double theta = rng.uniform(-0.5, 0.5) * std::numbers::pi;
        alphas.push_back(modulus * Complex(std::cos(theta), std::sin(theta)));
    }

    RegulatorSpec damping;
    damping.kind = RegulatorKind::damping;
    RegulatorSpec cutoff;
    cutoff.kind = RegulatorKind::cutoff;
    cutoff.extrapolation_levels = 3;

    double max_damping = 0.0;
    double max_cutoff = 0.0;
    bool regulators_agree = true;
    for (const Complex alpha : alphas) {
        const Complex closed = gaussian_closed_form(alpha);
        const RegulatedIntegral d = gaussian_regularized_study(alpha, damping);
        const RegulatedIntegral c = gaussian_regularized_study(alpha, cutoff);
        max_damping = std::max(max_damping, std::abs(d.value - closed));
        max_cutoff = std::max(max_cutoff, std::abs(c.value - closed));
        if (std::abs(d.value - c.value) >
            d.error_estimate + c.error_estimate + 1e-12) {
            regulators_agree = false;
        }
    }

    push(result, "damping_max", max_damping);
    push(result, "damping_tolerance", tol_damping);
    push(result, "cutoff_max", max_cutoff);
    push(result, "cutoff_tolerance", tol_cutoff);
    push(result, "regulators_agree", regulators_agree ? 1.0 : 0.0);

    if (max_damping > tol_damping) {
        std::ostringstream msg;
        msg << "damping error " << max_damping << " exceeds " << tol_damping;
        fail(result, msg.str());
    }
    if (max_cutoff > tol_cutoff) {
        std::ostringstream msg;
        msg << "cutoff error " << max_cutoff << " exceeds " << tol_cutoff;
        fail(result, msg.str());
    }
    if (!regulators_agree) {
        fail(result, "regulators disagree beyond combined error bars");
    }
    return result;
}

std::vector<SuiteResult> run_all_suites(const VerifyOptions& options) {
    return {run_stationarity_suite(options), run_identity_suite(options),
            run_factorization_suite(options), run_cross_engine_suite(options),
            run_regulator_suite(options)};
}

}  // namespace quantropy
