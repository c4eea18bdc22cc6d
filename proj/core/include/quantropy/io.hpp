#pragma once

#include <string>
#include <vector>

#include "quantropy/ensemble.hpp"
#include "quantropy/thermo.hpp"
#include "quantropy/verification.hpp"

namespace quantropy {

/// Complex numbers serialize as {"re":float,"im":float}; thermal reports
/// carry real fields only. Key order is fixed so identical inputs yield
/// byte-identical output.
std::string report_to_json(const EnsembleReport& report, int indent = 2);
std::string thermal_report_to_json(const ThermalReport& report,
                                   int indent = 2);
std::string suites_to_json(std::uint64_t seed,
                           const std::vector<SuiteResult>& suites,
                           int indent = 2);

/// Shortest-roundtrip decimal for CSV cells; deterministic for a given
/// value.
std::string format_double(double value);

}  // namespace quantropy
