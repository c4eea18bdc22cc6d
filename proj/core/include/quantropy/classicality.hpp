#pragma once

#include <complex>
#include <optional>

namespace quantropy {

using Complex = std::complex<double>;

inline constexpr Complex kImaginaryUnit{0.0, 1.0};

/// The classicality lambda: the complex Lagrange multiplier conjugate to
/// the expected action. lambda = 1/(i*hbar) on the quantum boundary,
/// lambda = beta > 0 in the statistical case. Admissible region is the
/// closed half-plane Re(lambda) >= 0 minus the origin.
class Classicality {
public:
    static Classicality from_lambda(Complex lambda);

    /// lambda = 1/(i*hbar) = -i/hbar, with the hbar value recorded.
    static Classicality from_hbar(double hbar);

    /// Real positive lambda, numerically equal to the coolness beta.
    static Classicality from_beta(double beta);

    Complex lambda() const { return lambda_; }
    std::optional<double> hbar() const { return hbar_; }

    bool is_real() const { return lambda_.imag() == 0.0; }
    bool is_imaginary() const { return lambda_.real() == 0.0; }

private:
    Classicality(Complex lambda, std::optional<double> hbar);

    Complex lambda_;
    std::optional<double> hbar_;
};

}  // namespace quantropy
