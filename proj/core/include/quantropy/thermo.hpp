#pragma once

#include "quantropy/classicality.hpp"
#include "quantropy/history_space.hpp"

namespace quantropy {

/// Boltzmann-side observables at coolness beta, all real. Identities
/// S = beta <E> + ln Z and F = -(1/beta) ln Z hold to 1e-10 by
/// construction check. S can be negative when the weights encode a
/// continuum measure (differential entropy); it is >= 0 when all w_x >= 1.
struct ThermalReport {
    double log_Z = 0.0;
    double expected_energy = 0.0;
    double entropy = 0.0;
    double free_energy = 0.0;
    double beta = 0.0;
};

/// p(x) = exp(-beta E(x))/Z on the space's action field read as energies;
/// S = -Sum w p ln p, <E> = Sum w E p, F = <E> - S/beta.
ThermalReport boltzmann_report(const HistorySpace& space, double beta);

/// Equipartition for a Gaussian energy: (dimensions/2) * particles * T.
double ideal_gas_expected_energy(int particles, int dimensions, double T);

/// The substitution T -> i hbar read backwards: the classicality whose
/// numeric value equals beta.
Classicality analogy_substitution(double thermal_beta);

/// True when the quantum engine at real lambda = beta reproduces the
/// thermal report field-by-field (Q~S, <A>~<E>, Phi~F, ln Z~ln Z) within
/// tol.
bool check_analogy(const HistorySpace& space, double beta, double tol = 1e-10);

}  // namespace quantropy
