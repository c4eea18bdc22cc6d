#include <cmath>
#include <numeric>

#include "doctest.h"

#include "quantropy/ensemble.hpp"
#include "quantropy/free_particle.hpp"
#include "quantropy/rng.hpp"
#include "quantropy/thermo.hpp"
#include "quantropy/verification.hpp"
#include "test_helpers.hpp"

using namespace quantropy;
using test_helpers::close;

TEST_CASE("two-state Boltzmann report, hand evaluation") {
    const HistorySpace space({"g", "e"}, {1.0, 1.0}, {0.0, 1.0});
    const ThermalReport rep = boltzmann_report(space, 1.0);
    CHECK(close(rep.log_Z, 0.31326168751822286, 1e-12));
    CHECK(close(rep.expected_energy, 0.2689414213699951, 1e-12));
    CHECK(close(rep.entropy, 0.582203108888218, 1e-12));
    CHECK(close(rep.free_energy, -0.31326168751822286, 1e-12));

    // Component-by-component agreement with the quantum engine at
    // lambda = beta.
    const EnsembleReport quantum = report(space, analogy_substitution(1.0));
    CHECK(close(quantum.log_Z, {rep.log_Z, 0.0}, 1e-12));
    CHECK(close(quantum.expected_action, {rep.expected_energy, 0.0}, 1e-12));
    CHECK(close(quantum.quantropy, {rep.entropy, 0.0}, 1e-12));
    CHECK(close(quantum.free_action, {rep.free_energy, 0.0}, 1e-12));
}

TEST_CASE("uniform and single-state limits") {
    for (const int n : {2, 8, 33}) {
        std::vector<std::string> ids;
        std::vector<double> weights(n, 1.0);
        std::vector<double> energies(n, 0.0);
        for (int i = 0; i < n; ++i) ids.push_back("s" + std::to_string(i));
        const HistorySpace space(ids, weights, energies);
        const double beta = 0.7;
        const ThermalReport rep = boltzmann_report(space, beta);
        CHECK(close(rep.entropy, std::log(static_cast<double>(n)), 1e-12));
        CHECK(close(rep.expected_energy, 0.0, 1e-12));
        CHECK(close(rep.free_energy, -std::log(static_cast<double>(n)) / beta,
                    1e-12));
    }

    const HistorySpace single({"only"}, {1.0}, {1.25});
    const ThermalReport rep = boltzmann_report(single, 2.0);
    CHECK(close(rep.entropy, 0.0, 1e-13));
    CHECK(close(rep.free_energy, 1.25, 1e-13));
}

TEST_CASE("ideal gas expected energy") {
    CHECK(ideal_gas_expected_energy(1, 3, 2.0) == 3.0);
    CHECK(ideal_gas_expected_energy(5, 1, 1.0) == 2.5);
    CHECK_THROWS_AS(ideal_gas_expected_energy(0, 3, 1.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(ideal_gas_expected_energy(1, 3, 0.0),
                    std::invalid_argument);

    // Equipartition via the Gaussian closed form at lambda = beta.
    for (const double T : {0.5, 1.0, 2.0}) {
        for (const int n : {1, 3}) {
            QuadraticAction gas;
            gas.coefficients.assign(3 * n, 1.0);
            const EnsembleReport rep = quadratic_action_report(
                gas, Classicality::from_beta(1.0 / T));
            CHECK(rep.expected_action.real() ==
                  ideal_gas_expected_energy(n, 3, T));
            CHECK(rep.expected_action.imag() == 0.0);
            // beta <E> = 3n/2 exactly.
            CHECK(close(rep.expected_action.real() / T, 1.5 * n, 1e-14));
        }
    }
}

TEST_CASE("analogy holds on random spaces") {
    CounterRng rng(616);
    for (const double beta : {0.1, 1.0, 10.0}) {
        for (int i = 0; i < 5; ++i) {
            const HistorySpace space = random_space(rng, 16);
            CHECK(check_analogy(space, beta));
        }
    }
    CHECK(analogy_substitution(2.5).lambda() == Complex(2.5, 0.0));
}

TEST_CASE("entropy identity via the numeric derivative of ln Z") {
    CounterRng rng(617);
    for (int i = 0; i < 10; ++i) {
        const HistorySpace space = random_space(rng, 24);
        const double beta = rng.uniform(0.3, 3.0);
        const ThermalReport rep = boltzmann_report(space, beta);
        const double h = 1e-6 * std::max(1.0, beta);
        const double dlnz =
            (boltzmann_report(space, beta + h).log_Z -
             boltzmann_report(space, beta - h).log_Z) /
            (2.0 * h);
        CHECK(close(rep.entropy, rep.log_Z - beta * dlnz, 1e-6));
    }
}

TEST_CASE("beta -> infinity reaches the minimum-energy state") {
    const HistorySpace gapped({"a", "b", "c"}, {1.0, 1.0, 1.0},
                              {0.25, 1.25, 2.25});
    const double gap = 1.0;
    double previous_entropy = 1e300;
    for (const double beta : {2.0, 4.0, 8.0, 16.0, 32.0}) {
        const ThermalReport rep = boltzmann_report(gapped, beta);
        CHECK(std::abs(rep.free_energy - 0.25) <= std::exp(-beta * gap));
        CHECK(rep.entropy < previous_entropy);
        previous_entropy = rep.entropy;
    }
    CHECK(previous_entropy < 1e-12);
}

TEST_CASE("Boltzmann distribution is a strict entropy maximum") {
    CounterRng rng(618);
    for (int trial = 0; trial < 10; ++trial) {
        // Random 4-state space with counting measure.
        std::vector<std::string> ids{"a", "b", "c", "d"};
        std::vector<double> weights(4, 1.0);
        std::vector<double> energies;
        for (int i = 0; i < 4; ++i) energies.push_back(rng.uniform(-1.0, 1.0));
        const HistorySpace space(ids, weights, energies);
        const double beta = rng.uniform(0.5, 2.0);

        std::vector<double> p(4);
        double z = 0.0;
        for (int i = 0; i < 4; ++i) z += std::exp(-beta * energies[i]);
        for (int i = 0; i < 4; ++i) p[i] = std::exp(-beta * energies[i]) / z;

        const auto entropy = [](const std::vector<double>& q) {
            double s = 0.0;
            for (double v : q) s -= v * std::log(v);
            return s;
        };

        // Directions preserving normalization and expected energy:
        // Gram-Schmidt against (1,..,1) and E.
        std::vector<double> d(4);
        for (int i = 0; i < 4; ++i) d[i] = rng.uniform(-1.0, 1.0);
        const double mean_e =
            std::accumulate(energies.begin(), energies.end(), 0.0) / 4.0;
        std::vector<double> f2(4);
        double n22 = 0.0;
        for (int i = 0; i < 4; ++i) {
            f2[i] = energies[i] - mean_e;
            n22 += f2[i] * f2[i];
        }
        const double mean_d = std::accumulate(d.begin(), d.end(), 0.0) / 4.0;
        for (int i = 0; i < 4; ++i) d[i] -= mean_d;
        double p2 = 0.0;
        for (int i = 0; i < 4; ++i) p2 += d[i] * f2[i];
        if (n22 > 1e-12) {
            for (int i = 0; i < 4; ++i) d[i] -= (p2 / n22) * f2[i];
        }

        const double s0 = entropy(p);
        for (const double t : {0.01, -0.01}) {
            std::vector<double> q(4);
            bool valid = true;
            for (int i = 0; i < 4; ++i) {
                q[i] = p[i] + t * d[i];
                valid = valid && q[i] > 0.0;
            }
            if (!valid) continue;
            CHECK(entropy(q) < s0);
        }
    }
}

TEST_CASE("entropy sign depends on the measure weights") {
    // Counting measure: S >= 0.
    CounterRng rng(619);
    for (int i = 0; i < 10; ++i) {
        const std::size_t n = 2 + rng.below(6);
        std::vector<std::string> ids;
        std::vector<double> weights;
        std::vector<double> energies;
        for (std::size_t k = 0; k < n; ++k) {
            ids.push_back("s" + std::to_string(k));
            weights.push_back(rng.uniform(1.0, 3.0));
            energies.push_back(rng.uniform(-1.0, 1.0));
        }
        const HistorySpace space(ids, weights, energies);
        CHECK(boltzmann_report(space, rng.uniform(0.5, 2.0)).entropy >= 0.0);
    }

    // Fine-measure weights can push the differential entropy negative.
    const HistorySpace fine({"a", "b"}, {0.01, 0.01}, {0.0, 0.0});
    CHECK(boltzmann_report(fine, 1.0).entropy < 0.0);
}
