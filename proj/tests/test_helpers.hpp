#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

namespace test_helpers {

using Complex = std::complex<double>;

inline bool close(Complex actual, Complex expected, double tol) {
    return std::abs(actual - expected) <= tol;
}

inline bool close(double actual, double expected, double tol) {
    return std::abs(actual - expected) <= tol;
}

// Composite Simpson rule on a uniform grid. Deliberately a different
// quadrature family from the library's Gauss-Legendre panels, so the two
// routes are independent.
inline Complex simpson(const std::function<Complex(double)>& f, double a,
                       double b, int intervals) {
    if (intervals % 2 != 0) ++intervals;
    const double h = (b - a) / intervals;
    Complex acc = f(a) + f(b);
    for (int i = 1; i < intervals; ++i) {
        acc += f(a + i * h) * (i % 2 == 0 ? 2.0 : 4.0);
    }
    return acc * (h / 3.0);
}

// Damped-quadrature oracle for the oscillatory Gaussian: Simpson sums of
// exp(-x^2/2a - eps x^2) at eps and eps/2, Richardson-extrapolated to
// eps -> 0. Good to a few 1e-4 for |alpha| up to ~3.
inline Complex damped_gaussian_oracle(Complex alpha, double eps = 5e-3) {
    const Complex c0 = -1.0 / (2.0 * alpha);
    const auto value_at = [&](double e) {
        const double half_width = 12.0 / std::sqrt(e);
        const double per_unit = std::max(50.0, 3.0 * half_width);
        const int intervals = static_cast<int>(
            std::min(4e6, 2.0 * half_width * per_unit));
        return simpson(
            [&](double x) { return std::exp((c0 - e) * x * x); }, -half_width,
            half_width, intervals);
    };
    const Complex coarse = value_at(eps);
    const Complex fine = value_at(eps / 2.0);
    return 2.0 * fine - coarse;
}

}  // namespace test_helpers
