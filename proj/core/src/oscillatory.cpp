#include "quantropy/oscillatory.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "quantropy/errors.hpp"

namespace quantropy {

namespace {

constexpr int kNodesPerPanel = 16;

struct GaussRule {
    std::array<double, kNodesPerPanel> x;
    std::array<double, kNodesPerPanel> w;
};

// Gauss-Legendre nodes on [-1, 1] by Newton iteration on P_n; the usual
// gauleg construction.
GaussRule make_gauss_rule() {
    GaussRule rule{};
    const int n = kNodesPerPanel;
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (z * p0 - p1) / (z * z - 1.0);
            const double dz = p0 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-15) break;
        }
        rule.x[i] = -z;
        rule.x[n - 1 - i] = z;
        rule.w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
        rule.w[n - 1 - i] = rule.w[i];
    }
    return rule;
}

const GaussRule& gauss_rule() {
    static const GaussRule rule = make_gauss_rule();
    return rule;
}

// Integral of exp(c x^2) over [x0, x1], x0 >= 0. Panels are capped at a
// quarter of the local oscillation period 2 pi / (2 |Im c| x) and at one
// decay width 1/sqrt(|c|), so each 16-node panel resolves the integrand to
// near machine precision. min_points is the floor on the total node count.
Complex integrate_exp_quadratic(Complex c, double x0, double x1,
                                int min_points) {
    if (x1 <= x0) return {0.0, 0.0};
    const GaussRule& rule = gauss_rule();
    const double im_c = std::abs(c.imag());
    const double re_c = c.real();

    const int base_panels =
        std::max(1, (min_points + kNodesPerPanel - 1) / kNodesPerPanel);
    const double base_width = (x1 - x0) / base_panels;
    const double decay_width =
        std::abs(c) > 0.0 ? 1.0 / std::sqrt(std::abs(c)) : base_width;

    Complex total{0.0, 0.0};
    double x = x0;
    while (x < x1) {
        // Tail is below 1e-26 of the peak once Re(c) x^2 < -60.
        if (re_c < 0.0 && re_c * x * x < -60.0) break;
        double width = std::min(base_width, decay_width);
        if (im_c > 0.0) {
            width = std::min(
                width, std::numbers::pi / (4.0 * im_c * std::max(x, 1.0)));
        }
        const double xe = std::min(x1, x + width);
        const double mid = 0.5 * (x + xe);
        const double half = 0.5 * (xe - x);
        Complex panel{0.0, 0.0};
        for (int k = 0; k < kNodesPerPanel; ++k) {
            const double xx = mid + half * rule.x[k];
            panel += rule.w[k] * std::exp(c * (xx * xx));
        }
        total += half * panel;
        x = xe;
    }
    return total;
}

void require_admissible(Complex alpha) {
    if (alpha == Complex(0.0, 0.0) || !std::isfinite(alpha.real()) ||
        !std::isfinite(alpha.imag())) {
        throw std::invalid_argument("alpha must be finite and nonzero");
    }
    // Re(1/alpha) = Re(alpha)/|alpha|^2, so admissibility is Re(alpha) >= 0.
    if (alpha.real() < 0.0) {
        throw DivergentIntegral(
            "exp(-x^2/2 alpha) grows at infinity: Re(1/alpha) < 0");
    }
}

std::vector<Complex> richardson_corners(const std::vector<Complex>& values) {
    // Neville tableau for expansions in eps with eps halved per level;
    // returns the diagonal (best extrapolant per truncation order).
    std::vector<Complex> corners{values.back()};
    std::vector<Complex> prev = values;
    for (std::size_t j = 1; j < values.size(); ++j) {
        std::vector<Complex> next(prev.size() - 1);
        const double factor = std::pow(2.0, static_cast<double>(j));
        for (std::size_t i = 0; i + 1 < prev.size(); ++i) {
            next[i] = (factor * prev[i + 1] - prev[i]) / (factor - 1.0);
        }
        corners.push_back(next.back());
        prev = std::move(next);
    }
    return corners;
}

// Length beyond which the remaining tail of exp(c x^2) is below 1e-13 by
// the integration-by-parts bound exp(Re(c) L^2) / (2 |c| L).
double tail_length(Complex c) {
    const double decay = -c.real();
    if (!(decay > 0.0)) return std::numeric_limits<double>::infinity();
    double length = std::sqrt(30.0 / decay);
    for (int i = 0; i < 4; ++i) {
        const double bound = std::log(2.0 * std::abs(c) * length * 1e13);
        length = std::sqrt(std::max(bound, 4.0) / decay);
    }
    return length;
}

RegulatedIntegral run_damping(Complex alpha, const RegulatorSpec& spec) {
    const Complex c0 = -1.0 / (2.0 * alpha);
    const Complex closed = gaussian_closed_form(alpha);
    std::vector<Complex> values;
    RegulatedIntegral out;
    for (int k = 0; k < spec.extrapolation_levels; ++k) {
        const double eps = spec.epsilon / std::pow(2.0, k);
        const double half_width =
            std::min(12.0 / std::sqrt(eps), tail_length(c0 - eps));
        const Complex value =
            2.0 * integrate_exp_quadratic(c0 - eps, 0.0, half_width,
                                          spec.quadrature_points / 2);
        values.push_back(value);
        out.levels.push_back(
            {k, eps, value, std::abs(value - closed)});
    }
    const std::vector<Complex> corners = richardson_corners(values);
    out.value = corners.back();
    out.error_estimate = std::abs(corners.back() - corners[corners.size() - 2]);
    return out;
}

RegulatedIntegral run_cutoff(Complex alpha, const RegulatorSpec& spec) {
    const Complex c = -1.0 / (2.0 * alpha);
    const double im_c = std::abs(c.imag());
    const Complex closed = gaussian_closed_form(alpha);

    RegulatedIntegral out;
    Complex partial{0.0, 0.0};
    double reached = 0.0;
    std::vector<Complex> estimates;
    for (int k = 0; k < spec.extrapolation_levels; ++k) {
        const double M = spec.cutoff_M * std::pow(2.0, k);
        partial += 2.0 * integrate_exp_quadratic(c, reached, M,
                                                 spec.quadrature_points / 2);
        reached = M;
        Complex estimate = partial;
        if (im_c > 0.0) {
            // Average with the partial integral half an endpoint
            // oscillation further out; the O(1/M) boundary terms arrive in
            // antiphase and cancel.
            const double half_period = std::numbers::pi / (2.0 * im_c * M);
            const Complex extra = 2.0 * integrate_exp_quadratic(
                                            c, M, M + half_period,
                                            spec.quadrature_points / 8);
            estimate = partial + 0.5 * extra;
        }
        estimates.push_back(estimate);
        out.levels.push_back({k, M, estimate, std::abs(estimate - closed)});
    }
    out.value = estimates.back();
    out.error_estimate =
        estimates.size() > 1
            ? std::abs(estimates.back() - estimates[estimates.size() - 2])
            : 0.0;
    return out;
}

}  // namespace

double RegulatorSpec::effective_tolerance() const {
    if (tolerance > 0.0) return tolerance;
    return kind == RegulatorKind::damping ? 1e-6 : 1e-3;
}

void RegulatorSpec::validate() const {
    if (!(cutoff_M > 0.0) || !(epsilon > 0.0)) {
        throw std::invalid_argument("cutoff_M and epsilon must be positive");
    }
    if (quadrature_points < 64) {
        throw std::invalid_argument("need at least 64 quadrature points");
    }
    if (extrapolation_levels < 2) {
        throw std::invalid_argument("need at least 2 extrapolation levels");
    }
    if (tolerance < 0.0) {
        throw std::invalid_argument("tolerance must be nonnegative");
    }
}

Complex gaussian_closed_form(Complex alpha) {
    require_admissible(alpha);
    return std::sqrt(2.0 * std::numbers::pi * alpha);
}

RegulatedIntegral gaussian_regularized_study(Complex alpha,
                                             const RegulatorSpec& spec) {
    spec.validate();
    require_admissible(alpha);
    RegulatedIntegral out = spec.kind == RegulatorKind::damping
                                ? run_damping(alpha, spec)
                                : run_cutoff(alpha, spec);
    if (out.error_estimate >
        spec.effective_tolerance() * (1.0 + std::abs(out.value))) {
        throw NoConvergence(
            "regulator levels did not settle within the requested tolerance");
    }
    return out;
}

Complex gaussian_regularized(Complex alpha, const RegulatorSpec& spec) {
    return gaussian_regularized_study(alpha, spec).value;
}

std::vector<RegulatorLevelRow> convergence_study(Complex alpha,
                                                 const RegulatorSpec& spec) {
    return gaussian_regularized_study(alpha, spec).levels;
}

}  // namespace quantropy
