#include "quantropy/stationarity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "quantropy/errors.hpp"
#include "quantropy/rng.hpp"

namespace quantropy {

namespace {

// Unconjugated weighted bilinear form Sum w u v. The amplitudes are
// independent holomorphic variables, so no conjugation anywhere.
Complex form(std::span<const double> w, std::span<const Complex> u,
             std::span<const Complex> v) {
    Complex acc{0.0, 0.0};
    for (std::size_t i = 0; i < w.size(); ++i) acc += w[i] * u[i] * v[i];
    return acc;
}

}  // namespace

LagrangeResidual lagrange_residual(const ComplexEnsemble& ensemble,
                                   const Classicality& lambda) {
    const Complex lam = lambda.lambda();
    const Complex log_Z =
        log_partition_function(ensemble.space(), lambda);
    const Complex mu = log_Z - 1.0;

    LagrangeResidual result;
    result.mu = mu;
    result.per_history.resize(ensemble.size());
    for (std::size_t i = 0; i < ensemble.size(); ++i) {
        const Complex r = 1.0 + ensemble.log_amplitudes()[i] +
                          lam * ensemble.space().actions()[i] + mu;
        result.per_history[i] = r;
        result.max_abs = std::max(result.max_abs, std::abs(r));
    }
    return result;
}

LagrangeResidual free_action_residual(const ComplexEnsemble& ensemble,
                                      const Classicality& lambda) {
    const Complex lam = lambda.lambda();
    const Complex log_Z =
        log_partition_function(ensemble.space(), lambda);
    const Complex nu = (log_Z - 1.0) / lam;

    LagrangeResidual result;
    result.mu = nu;
    result.per_history.resize(ensemble.size());
    for (std::size_t i = 0; i < ensemble.size(); ++i) {
        const Complex r = ensemble.space().actions()[i] +
                          (1.0 + ensemble.log_amplitudes()[i]) / lam + nu;
        result.per_history[i] = r;
        result.max_abs = std::max(result.max_abs, std::abs(r));
    }
    return result;
}

double directional_stationarity(const ComplexEnsemble& ensemble,
                                const Classicality& lambda,
                                const StationarityOptions& options) {
    const std::size_t n = ensemble.size();
    if (n < 3) {
        throw std::invalid_argument(
            "need at least 3 histories: two constraints leave no tangent "
            "space otherwise");
    }
    if (!(options.t > 0.0) || options.trials < 1) {
        throw std::invalid_argument("need t > 0 and trials >= 1");
    }

    const auto w = ensemble.space().weights();
    const auto actions = ensemble.space().actions();
    const auto a = ensemble.amplitudes();
    const auto b = ensemble.log_amplitudes();

    // Constraint functionals: Sum w delta = 0 and Sum w delta A = 0.
    // Orthogonalize the action row against the constant row once.
    std::vector<Complex> f1(n, Complex(1.0, 0.0));
    std::vector<Complex> f2(n);
    for (std::size_t i = 0; i < n; ++i) f2[i] = actions[i];
    const Complex n11 = form(w, f1, f1);
    const Complex c12 = form(w, f2, f1) / n11;
    for (std::size_t i = 0; i < n; ++i) f2[i] -= c12;
    const Complex n22 = form(w, f2, f2);
    const bool action_direction_usable = std::abs(n22) > 1e-14 * n11.real();

    CounterRng rng(options.seed, /*stream=*/7);
    std::vector<Complex> delta(n);
    std::vector<Complex> ratio(n);  // delta / a

    const double t = options.t;
    double max_c1 = 0.0;

    for (int trial = 0; trial < options.trials; ++trial) {
        bool accepted = false;
        for (int attempt = 0; attempt < 16 && !accepted; ++attempt) {
            for (std::size_t i = 0; i < n; ++i) {
                delta[i] = a[i] * rng.complex_box();
            }
            const Complex p1 = form(w, delta, f1) / n11;
            for (std::size_t i = 0; i < n; ++i) delta[i] -= p1;
            if (action_direction_usable) {
                const Complex p2 = form(w, delta, f2) / n22;
                for (std::size_t i = 0; i < n; ++i) delta[i] -= p2 * f2[i];
            }
            double scale = 0.0;
            bool degenerate = false;
            for (std::size_t i = 0; i < n; ++i) {
                if (std::abs(a[i]) < 1e-12) {
                    degenerate = true;
                    break;
                }
                ratio[i] = delta[i] / a[i];
                scale = std::max(scale, std::abs(ratio[i]));
            }
            if (degenerate) {
                throw AmplitudeNearZero(
                    "an amplitude is within 1e-12 of zero; the logarithm "
                    "cannot be continued along this direction");
            }
            if (scale < 1e-14) continue;  // projection annihilated the draw
            // Keep |delta/a| <= 1/2 so the perturbed amplitudes stay well
            // clear of zero and the log branch continues smoothly.
            for (std::size_t i = 0; i < n; ++i) {
                ratio[i] /= 2.0 * scale;
                delta[i] = ratio[i] * a[i];
            }
            accepted = true;
            for (std::size_t i = 0; i < n; ++i) {
                if (std::abs(a[i] + t * delta[i]) < 1e-12) {
                    accepted = false;
                    break;
                }
            }
        }
        if (!accepted) {
            throw AmplitudeNearZero(
                "could not draw a tangent direction keeping all amplitudes "
                "away from zero");
        }

        // dQ(s) = Q(a + s delta) - Q(a), accumulated term by term so the
        // O(s) difference is not lost to cancellation:
        //   dQ(s) = -Sum w [ a L + s delta L + s delta b ],
        //   L = Ln(1 + s delta / a).
        const auto delta_q = [&](double s) {
            Complex acc{0.0, 0.0};
            for (std::size_t i = 0; i < n; ++i) {
                const Complex L = std::log(Complex(1.0, 0.0) + s * ratio[i]);
                acc += w[i] * (a[i] * L + s * delta[i] * L + s * delta[i] * b[i]);
            }
            return -acc;
        };

        const double y1 = std::abs(delta_q(t));
        const double y2 = std::abs(delta_q(t / 2.0));
        const double c1 = std::abs(4.0 * y2 - y1) / t;
        max_c1 = std::max(max_c1, c1);
    }
    return max_c1;
}

double directional_stationarity(const HistorySpace& space,
                                const Classicality& lambda,
                                const StationarityOptions& options) {
    return directional_stationarity(feynman_weights(space, lambda), lambda,
                                    options);
}

}  // namespace quantropy
