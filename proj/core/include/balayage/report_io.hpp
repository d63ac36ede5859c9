#pragma once

// Text serialization of measures, grids and reports. JSON output uses a fixed
// key order and round-trip precision so equal inputs give equal bytes.

#include <string>
#include <vector>

#include "balayage/measures.hpp"
#include "balayage/operators.hpp"
#include "balayage/seminorms.hpp"
#include "balayage/verify.hpp"

namespace balayage {

// Tagged measure records:
//   {"type":"atomic","atoms":[{"re":..,"im":..,"mass":..}]}
//   {"type":"weighted_area","alpha":0}
//   {"type":"radial_segment","angle":0}
//   {"type":"cap","re":..,"im":..,"radius":..,"mass":..}
//   {"type":"weight_transform","sigma":2,"base":{...}}
// Throws PreconditionError on schema violations.
Measure parse_measure(const std::string& json_text);
std::string measure_to_json(const Measure& mu);

std::string report_to_json(const VerificationReport& report);
std::string report_samples_csv(const VerificationReport& report);
std::string grid_csv(const BoundaryGrid& grid);
std::string oscillation_csv(const std::vector<OscillationSample>& samples);
std::string carleson_report_json(const CarlesonReport& report);
std::string carleson_report_csv(const CarlesonReport& report);

// Shortest decimal form that reads back to the same double.
std::string format_double(double x);

}  // namespace balayage
