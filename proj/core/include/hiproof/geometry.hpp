#pragma once

#include <numbers>

#include "hiproof/error.hpp"

namespace hiproof {

// Hip roof house: rectangular W x L footprint, wall height H, four roof planes
// sharing slope alpha. The attic is not habitable, so the volume is the
// wall-bounded box only and the ground face is not part of the envelope.

/// Measured or designed dimensions. Lengths in meters, alpha in radians.
struct HouseParams {
  double width = 0.0;
  double length = 0.0;
  double height = 0.0;
  double alpha = 0.0;
};

/// r = L/W (footprint), k = H/W (slenderness).
struct AspectRatios {
  double r = 0.0;
  double k = 0.0;
};

struct EnvelopeQuantities {
  double volume = 0.0;      // m^3
  double surface = 0.0;     // m^2, walls + roof planes
  double floor_area = 0.0;  // m^2
};

struct CompactnessReport {
  double surface = 0.0;
  double min_surface = 0.0;
  double ratio = 0.0;  // S / S_min, >= 1 against a true minimum
  double surplus = 0.0;
};

/// Guard on slope angles; the open interval (kAlphaEpsilon, pi/2 - kAlphaEpsilon).
inline constexpr double kAlphaEpsilon = 1e-9;

/// Rounding guard used when asserting S / S_min >= 1.
inline constexpr double kRatioEpsilon = 1e-9;

constexpr double deg_to_rad(double degrees) noexcept { return degrees * std::numbers::pi / 180.0; }
constexpr double rad_to_deg(double radians) noexcept { return radians * 180.0 / std::numbers::pi; }

// Validators throw DomainError naming `field`.
void require_alpha(double alpha, const char* field = "alpha");
void require_positive(double value, const char* field, ErrorCode code);
void validate(const HouseParams& p);

double volume(const HouseParams& p);
double floor_area(const HouseParams& p);

/// 2WH + 2LH + LW/cos(alpha).
double external_surface(const HouseParams& p);

EnvelopeQuantities envelope(const HouseParams& p);
AspectRatios ratios_of(const HouseParams& p);

/// Reduced surface: S = V^(2/3) * gamma(r, k, alpha) for any volume V.
double gamma(double r, double k, double alpha);

double surface_from_ratios(double volume, double r, double k, double alpha);

/// Rebuilds the house with the given volume and proportions:
/// W = (V / (r k))^(1/3), L = r W, H = k W.
HouseParams house_from_ratios(double volume, double r, double k, double alpha);

/// Scales every length by lambda; alpha is unchanged.
HouseParams scaled(const HouseParams& p, double lambda);

CompactnessReport compactness(const HouseParams& p, double min_surface);

}  // namespace hiproof
