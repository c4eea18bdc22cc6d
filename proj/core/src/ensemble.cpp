#include "quantropy/ensemble.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "quantropy/errors.hpp"

namespace quantropy {

namespace {

constexpr double kCancellationFloor = 1e-12;  // |Z| relative to total mass
constexpr double kUnderflowFloorLog = -690.77552789821368;  // ln(1e-300)
constexpr double kZeroAmplitude = 1e-300;                   // 0 ln 0 cut

// Compensated accumulation; the big quadrature spaces push plain
// summation past the 1e-10 normalization budget.
struct KahanSum {
    Complex sum{0.0, 0.0};
    Complex carry{0.0, 0.0};

    void add(Complex value) {
        const Complex y = value - carry;
        const Complex t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
};

double wrap_to_principal(double angle) {
    double wrapped = std::remainder(angle, 2.0 * std::numbers::pi);
    if (wrapped <= -std::numbers::pi) wrapped += 2.0 * std::numbers::pi;
    return wrapped;
}

struct ShiftedPartition {
    Complex log_Z;     // principal
    Complex z_scaled;  // Z * exp(lambda * shift)
    double shift;      // action shift applied before exponentiation
};

ShiftedPartition shifted_partition(const HistorySpace& space,
                                   const Classicality& lambda) {
    const Complex lam = lambda.lambda();
    const double shift = lam.real() > 0.0 ? space.min_action() : 0.0;

    KahanSum z;
    KahanSum mass;
    for (std::size_t i = 0; i < space.size(); ++i) {
        const double a = space.actions()[i];
        if (!std::isfinite(a)) {
            throw NonFiniteAction("history action is not finite");
        }
        const Complex term =
            space.weights()[i] * std::exp(-lam * Complex(a - shift));
        z.add(term);
        mass.add(std::abs(term));
    }
    const Complex zs = z.sum;
    const double total_mass = mass.sum.real();
    if (!std::isfinite(zs.real()) || !std::isfinite(zs.imag())) {
        throw ZeroPartitionFunction("partition function is not finite");
    }
    if (std::abs(zs) <= kCancellationFloor * total_mass) {
        std::ostringstream msg;
        msg << "partition function cancelled to |Z| = " << std::abs(zs)
            << " against total mass " << total_mass
            << " (destructive interference)";
        throw ZeroPartitionFunction(msg.str());
    }
    const double log_abs = std::log(std::abs(zs)) - lam.real() * shift;
    if (log_abs < kUnderflowFloorLog) {
        throw ZeroPartitionFunction("partition function underflowed 1e-300");
    }
    const double arg = wrap_to_principal(std::arg(zs) - lam.imag() * shift);
    return {Complex(log_abs, arg), zs, shift};
}

}  // namespace

Classicality::Classicality(Complex lambda, std::optional<double> hbar)
    : lambda_(lambda), hbar_(hbar) {}

Classicality Classicality::from_lambda(Complex lambda) {
    if (lambda == Complex(0.0, 0.0)) {
        throw std::invalid_argument("classicality must be nonzero");
    }
    if (!std::isfinite(lambda.real()) || !std::isfinite(lambda.imag())) {
        throw std::invalid_argument("classicality must be finite");
    }
    if (lambda.real() < 0.0) {
        throw std::invalid_argument(
            "classicality must have Re(lambda) >= 0 (convergence half-plane)");
    }
    return Classicality(lambda, std::nullopt);
}

Classicality Classicality::from_hbar(double hbar) {
    if (!(hbar > 0.0) || !std::isfinite(hbar)) {
        throw std::invalid_argument("hbar must be positive and finite");
    }
    return Classicality(Complex(0.0, -1.0 / hbar), hbar);
}

Classicality Classicality::from_beta(double beta) {
    if (!(beta > 0.0) || !std::isfinite(beta)) {
        throw std::invalid_argument("beta must be positive and finite");
    }
    return Classicality(Complex(beta, 0.0), std::nullopt);
}

ComplexEnsemble::ComplexEnsemble(HistorySpace space,
                                 std::vector<Complex> amplitudes,
                                 std::vector<Complex> log_amplitudes)
    : space_(std::move(space)),
      amplitudes_(std::move(amplitudes)),
      log_amplitudes_(std::move(log_amplitudes)) {
    if (amplitudes_.size() != space_.size() ||
        log_amplitudes_.size() != space_.size()) {
        throw std::invalid_argument(
            "amplitude arrays must match the history count");
    }
    KahanSum norm;
    for (std::size_t i = 0; i < space_.size(); ++i) {
        norm.add(space_.weights()[i] * amplitudes_[i]);
        const Complex back = std::exp(log_amplitudes_[i]);
        if (std::abs(back - amplitudes_[i]) >
            1e-12 * (1.0 + std::abs(amplitudes_[i]))) {
            throw std::invalid_argument(
                "log amplitude is not a logarithm of the amplitude");
        }
    }
    if (std::abs(norm.sum - Complex(1.0, 0.0)) > 1e-10) {
        std::ostringstream msg;
        msg << "amplitudes are not normalized: sum w a = " << norm.sum.real()
            << (norm.sum.imag() < 0 ? " - " : " + ")
            << std::abs(norm.sum.imag()) << "i";
        throw std::invalid_argument(msg.str());
    }
}

Complex ComplexEnsemble::quantropy() const {
    KahanSum q;
    for (std::size_t i = 0; i < size(); ++i) {
        if (std::abs(amplitudes_[i]) < kZeroAmplitude) continue;  // 0 ln 0 = 0
        q.add(space_.weights()[i] * amplitudes_[i] * log_amplitudes_[i]);
    }
    return -q.sum;
}

Complex ComplexEnsemble::expected_action() const {
    KahanSum ea;
    for (std::size_t i = 0; i < size(); ++i) {
        ea.add(space_.weights()[i] * space_.actions()[i] * amplitudes_[i]);
    }
    return ea.sum;
}

Complex log_partition_function(const HistorySpace& space,
                               const Classicality& lambda) {
    return shifted_partition(space, lambda).log_Z;
}

ComplexEnsemble feynman_weights(const HistorySpace& space,
                                const Classicality& lambda) {
    const ShiftedPartition part = shifted_partition(space, lambda);
    const Complex lam = lambda.lambda();
    std::vector<Complex> amplitudes(space.size());
    std::vector<Complex> log_amplitudes(space.size());
    for (std::size_t i = 0; i < space.size(); ++i) {
        const double a = space.actions()[i];
        amplitudes[i] = std::exp(-lam * Complex(a - part.shift)) / part.z_scaled;
        log_amplitudes[i] = -lam * a - part.log_Z;
    }
    return ComplexEnsemble(space, std::move(amplitudes),
                           std::move(log_amplitudes));
}

EnsembleReport make_report(Complex log_Z, Complex expected_action,
                           Complex quantropy, Complex free_action,
                           const Classicality& lambda) {
    const Complex lam = lambda.lambda();
    if (std::abs(quantropy - (lam * expected_action + log_Z)) > 1e-10) {
        throw Error("report identity Q = lambda <A> + ln Z violated");
    }
    if (std::abs(free_action + log_Z / lam) > 1e-10) {
        throw Error("report identity Phi = -(1/lambda) ln Z violated");
    }
    return EnsembleReport{log_Z, expected_action, quantropy, free_action,
                          lambda};
}

EnsembleReport report(const HistorySpace& space, const Classicality& lambda) {
    const ComplexEnsemble ensemble = feynman_weights(space, lambda);
    const Complex log_Z = log_partition_function(space, lambda);
    return make_report(log_Z, ensemble.expected_action(), ensemble.quantropy(),
                       -log_Z / lambda.lambda(), lambda);
}

Complex expected_action_from_log_z(
    const std::function<Complex(Complex)>& log_z, const Classicality& lambda,
    double step) {
    if (!(step > 0.0) || !std::isfinite(step)) {
        throw std::invalid_argument("derivative step must be positive");
    }
    const Complex lam = lambda.lambda();
    const Complex direction = lam / std::abs(lam);
    const double h = step * std::max(1.0, std::abs(lam));
    const Complex lam_plus = lam + h * direction;
    const Complex lam_minus = lam - h * direction;
    for (Complex probe : {lam_plus, lam_minus}) {
        if (probe.real() < 0.0 || probe == Complex(0.0, 0.0)) {
            throw std::invalid_argument(
                "lambda is too close to the admissible boundary for the "
                "requested step");
        }
    }
    const Complex lnz_plus = log_z(lam_plus);
    const Complex lnz_minus = log_z(lam_minus);
    if (std::abs(lnz_plus.imag() - lnz_minus.imag()) > std::numbers::pi) {
        throw StepTooLarge(
            "central difference straddles a branch cut of Ln Z");
    }
    return -(lnz_plus - lnz_minus) / (2.0 * h * direction);
}

Complex expected_action_via_derivative(const HistorySpace& space,
                                       const Classicality& lambda,
                                       double step) {
    return expected_action_from_log_z(
        [&space](Complex lam) {
            return log_partition_function(space, Classicality::from_lambda(lam));
        },
        lambda, step);
}

}  // namespace quantropy
