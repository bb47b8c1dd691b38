#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "hiproof/geometry.hpp"
#include "hiproof/optimizers.hpp"
#include "hiproof/oracle.hpp"

// JSON and CSV encodings shared by the CLI and the HTTP service. Angles on the
// wire are degrees; keys are emitted in a fixed order so identical values
// serialize to identical bytes. Schemas are documented in docs/api.md.

namespace hiproof::io {

using Json = nlohmann::ordered_json;

Json to_json(const OptimalDesign& design);
Json to_json(const KktDiagnostics& kkt);
Json to_json(const CompactnessReport& report);
Json to_json(const oracle::ContourGrid& grid);

OptimalDesign design_from_json(const Json& j);

/// Parses {"scenario": "...", "params": {...}}. Throws DomainError with
/// invalid_request / unknown_scenario for schema problems.
ScenarioSpec scenario_from_json(const Json& j);

/// Parses {"width", "length", "height", "alpha_deg"}; other keys listed in
/// `allowed_extra` are tolerated.
HouseParams house_from_json(const Json& j, std::initializer_list<const char*> allowed_extra = {});

/// Header row holds the r samples (first cell "k\r"), each following row
/// starts with its k sample.
std::string contour_to_csv(const oracle::ContourGrid& grid);

/// Shortest representation that parses back to the same double.
std::string format_number(double value);

}  // namespace hiproof::io
