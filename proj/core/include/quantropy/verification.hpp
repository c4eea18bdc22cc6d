#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "quantropy/history_space.hpp"
#include "quantropy/rng.hpp"

namespace quantropy {

struct SuiteResult {
    std::string name;
    bool passed = false;
    /// Measured residuals and the thresholds they were held to,
    /// in insertion order.
    std::vector<std::pair<std::string, double>> metrics;
    std::string detail;  // diagnostic text, empty when passed
};

struct VerifyOptions {
    std::uint64_t seed = 42;
    /// Replace Feynman weights by a 10%-perturbed ensemble; the
    /// stationarity suite must then fail.
    bool negative_control = false;
    /// Overrides keyed by metric name: residual, linear_coeff, identity,
    /// identity_numeric, factorization, cross_engine, damping, cutoff.
    std::map<std::string, double> tolerances;

    double tol(const std::string& name, double fallback) const;
};

SuiteResult run_stationarity_suite(const VerifyOptions& options);
SuiteResult run_identity_suite(const VerifyOptions& options);
SuiteResult run_factorization_suite(const VerifyOptions& options);
SuiteResult run_cross_engine_suite(const VerifyOptions& options);
SuiteResult run_regulator_suite(const VerifyOptions& options);

/// All five suites in a fixed order.
std::vector<SuiteResult> run_all_suites(const VerifyOptions& options);

/// Random test space: 3..max_size histories, weights in [0.5, 2], actions
/// in [-1, 1]. The action range keeps the phase spread at imaginary
/// classicality below one radian, well away from destructive interference.
HistorySpace random_space(CounterRng& rng, std::size_t max_size = 32);

}  // namespace quantropy
