#include "quantropy/io.hpp"

#include <cstdio>
#include <cstdlib>

#include "json.hpp"

namespace quantropy {

namespace {

nlohmann::ordered_json complex_json(Complex z) {
    return {{"re", z.real()}, {"im", z.imag()}};
}

}  // namespace

std::string report_to_json(const EnsembleReport& report, int indent) {
    nlohmann::ordered_json doc;
    doc["lambda"] = complex_json(report.lambda.lambda());
    if (report.lambda.hbar()) doc["hbar"] = *report.lambda.hbar();
    doc["log_Z"] = complex_json(report.log_Z);
    doc["expected_action"] = complex_json(report.expected_action);
    doc["quantropy"] = complex_json(report.quantropy);
    doc["free_action"] = complex_json(report.free_action);
    return doc.dump(indent) + "\n";
}

std::string thermal_report_to_json(const ThermalReport& report, int indent) {
    nlohmann::ordered_json doc;
    doc["beta"] = report.beta;
    doc["log_Z"] = report.log_Z;
    doc["expected_energy"] = report.expected_energy;
    doc["entropy"] = report.entropy;
    doc["free_energy"] = report.free_energy;
    return doc.dump(indent) + "\n";
}

std::string suites_to_json(std::uint64_t seed,
                           const std::vector<SuiteResult>& suites,
                           int indent) {
    nlohmann::ordered_json doc;
    doc["seed"] = seed;
    doc["suites"] = nlohmann::ordered_json::array();
    bool all_passed = true;
    for (const SuiteResult& suite : suites) {
        nlohmann::ordered_json entry;
        entry["name"] = suite.name;
        entry["passed"] = suite.passed;
        nlohmann::ordered_json metrics;
        for (const auto& [key, value] : suite.metrics) metrics[key] = value;
        entry["metrics"] = metrics;
        if (!suite.detail.empty()) entry["detail"] = suite.detail;
        doc["suites"].push_back(entry);
        all_passed = all_passed && suite.passed;
    }
    doc["all_passed"] = all_passed;
    return doc.dump(indent) + "\n";
}

std::string format_double(double value) {
    char buffer[64];
    // Shortest representation that round-trips a double.
    for (int precision = 1; precision <= 17; ++precision) {
        std::snprintf(buffer, sizeof(buffer), "%.*g", precision, value);
        if (std::strtod(buffer, nullptr) == value) break;
    }
    return buffer;
}

}  // namespace quantropy
