#pragma once

#include <optional>
#include <string_view>
#include <variant>

#include "hiproof/geometry.hpp"

namespace hiproof {

enum class Scenario { fixed_volume, fixed_r, fixed_k, fixed_floor, height_range };

/// Wire names: "fixed-volume", "fixed-r", "fixed-k", "fixed-floor", "height-range".
std::string_view to_string(Scenario s) noexcept;
std::optional<Scenario> scenario_from_string(std::string_view name) noexcept;

// Problem statements. Angles are radians here; front ends convert degrees.
struct FixedVolume {
  double volume;
  double alpha;
};

struct FixedFootprintRatio {
  double volume;
  double alpha;
  double r;
};

struct FixedSlenderness {
  double volume;
  double alpha;
  double k;
};

/// Floor area F = W L with a given wall height (the height is not optimized).
struct FixedFloorArea {
  double floor_area;
  double height;
  double alpha;
};

/// Fixed volume with the wall height confined to [min_height, max_height].
struct HeightRange {
  double volume;
  double alpha;
  double min_height;
  double max_height;
};

using ScenarioSpec =
    std::variant<FixedVolume, FixedFootprintRatio, FixedSlenderness, FixedFloorArea, HeightRange>;

Scenario scenario_of(const ScenarioSpec& spec) noexcept;
double alpha_of(const ScenarioSpec& spec) noexcept;

enum class ActiveBound { lower, interior, upper };

std::string_view to_string(ActiveBound b) noexcept;

/// KKT certificate for the height-range problem. mu1 belongs to H >= a,
/// mu2 to H <= b; both come from the closed-form stationarity condition.
struct KktDiagnostics {
  double h_crit = 0.0;
  ActiveBound active = ActiveBound::interior;
  double mu1 = 0.0;
  double mu2 = 0.0;
};

struct OptimalDesign {
  Scenario scenario = Scenario::fixed_volume;
  double width = 0.0;
  double length = 0.0;
  double height = 0.0;
  double surface = 0.0;
  double r = 0.0;
  // For fixed-floor this is H / sqrt(F), reported for uniformity only.
  double k = 0.0;
  double volume = 0.0;
  std::optional<KktDiagnostics> kkt;
};

/// Plausibility caps applied to optimizer inputs (and by the service to
/// scored designs).
struct InputLimits {
  double max_volume = 1e9;     // m^3
  double max_dimension = 1e4;  // m; floor areas are capped at its square
};

/// Throws DomainError for invalid or implausible input.
void validate(const ScenarioSpec& spec, const InputLimits& limits = {});
void check_limits(const HouseParams& p, const InputLimits& limits = {});

OptimalDesign optimize_fixed_volume(double volume, double alpha, const InputLimits& limits = {});
OptimalDesign optimize_fixed_r(double volume, double alpha, double r, const InputLimits& limits = {});
OptimalDesign optimize_fixed_k(double volume, double alpha, double k, const InputLimits& limits = {});
OptimalDesign optimize_fixed_floor(double floor_area, double height, double alpha,
                                   const InputLimits& limits = {});
OptimalDesign optimize_height_range(double volume, double alpha, double min_height, double max_height,
                                    const InputLimits& limits = {});

/// Unconstrained optimal wall height (V / (4 cos^2 alpha))^(1/3).
double h_crit(double volume, double alpha);

OptimalDesign optimize(const ScenarioSpec& spec, const InputLimits& limits = {});

inline HouseParams house_of(const OptimalDesign& d, double alpha) {
  return {d.width, d.length, d.height, alpha};
}

}  // namespace hiproof
