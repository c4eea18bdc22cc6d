#include "quantropy/thermo.hpp"

#include <cmath>
#include <stdexcept>

#include "quantropy/ensemble.hpp"
#include "quantropy/errors.hpp"

namespace quantropy {

ThermalReport boltzmann_report(const HistorySpace& space, double beta) {
    if (!(beta > 0.0) || !std::isfinite(beta)) {
        throw std::invalid_argument("beta must be positive and finite");
    }
    const auto weights = space.weights();
    const auto energies = space.actions();  // the action field read as E(x)
    const double shift = space.min_action();

    double z_scaled = 0.0;
    for (std::size_t i = 0; i < space.size(); ++i) {
        z_scaled += weights[i] * std::exp(-beta * (energies[i] - shift));
    }
    const double log_Z = std::log(z_scaled) - beta * shift;

    double entropy = 0.0;
    double expected_energy = 0.0;
    for (std::size_t i = 0; i < space.size(); ++i) {
        const double p = std::exp(-beta * (energies[i] - shift)) / z_scaled;
        if (p > 0.0) entropy -= weights[i] * p * std::log(p);
        expected_energy += weights[i] * energies[i] * p;
    }
    const double free_energy = expected_energy - entropy / beta;

    ThermalReport out{log_Z, expected_energy, entropy, free_energy, beta};
    if (std::abs(out.entropy - (beta * out.expected_energy + out.log_Z)) >
        1e-10 * (1.0 + std::abs(out.entropy))) {
        throw Error("thermal identity S = beta <E> + ln Z violated");
    }
    if (std::abs(out.free_energy + out.log_Z / beta) >
        1e-10 * (1.0 + std::abs(out.free_energy))) {
        throw Error("thermal identity F = -(1/beta) ln Z violated");
    }
    return out;
}

double ideal_gas_expected_energy(int particles, int dimensions, double T) {
    if (particles < 1 || dimensions < 1) {
        throw std::invalid_argument("need at least one particle and dimension");
    }
    if (!(T > 0.0) || !std::isfinite(T)) {
        throw std::invalid_argument("temperature must be positive and finite");
    }
    // 1/2 T per quadratic degree of freedom, Boltzmann constant 1.
    return 0.5 * dimensions * particles * T;
}

Classicality analogy_substitution(double thermal_beta) {
    return Classicality::from_beta(thermal_beta);
}

bool check_analogy(const HistorySpace& space, double beta, double tol) {
    const EnsembleReport quantum =
        report(space, analogy_substitution(beta));
    const ThermalReport thermal = boltzmann_report(space, beta);
    const auto matches = [tol](Complex q, double t) {
        return std::abs(q.real() - t) <= tol && std::abs(q.imag()) <= tol;
    };
    return matches(quantum.log_Z, thermal.log_Z) &&
           matches(quantum.expected_action, thermal.expected_energy) &&
           matches(quantum.quantropy, thermal.entropy) &&
           matches(quantum.free_action, thermal.free_energy);
}

}  // namespace quantropy
