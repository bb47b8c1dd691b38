#include "hiproof/geometry.hpp"

#include <cmath>
#include <string>

#include <fmt/format.h>

namespace hiproof {

void require_alpha(double alpha, const char* field) {
  constexpr double lo = kAlphaEpsilon;
  constexpr double hi = std::numbers::pi / 2.0 - kAlphaEpsilon;
  if (!std::isfinite(alpha) || alpha <= lo || alpha >= hi) {
    throw DomainError(ErrorCode::invalid_alpha, field,
                      fmt::format("{} must lie strictly between 0 and 90 degrees (got {} rad)", field,
                                  alpha));
  }
}

void require_positive(double value, const char* field, ErrorCode code) {
  if (!std::isfinite(value) || value <= 0.0) {
    throw DomainError(code, field, fmt::format("{} must be a finite positive number (got {})", field, value));
  }
}

void validate(const HouseParams& p) {
  require_positive(p.width, "width", ErrorCode::invalid_dimension);
  require_positive(p.length, "length", ErrorCode::invalid_dimension);
  require_positive(p.height, "height", ErrorCode::invalid_dimension);
  require_alpha(p.alpha);
}

double volume(const HouseParams& p) {
  validate(p);
  return p.width * p.length * p.height;
}

double floor_area(const HouseParams& p) {
  validate(p);
  return p.width * p.length;
}

double external_surface(const HouseParams& p) {
  validate(p);
  return 2.0 * p.width * p.height + 2.0 * p.length * p.height + p.length * p.width / std::cos(p.alpha);
}

EnvelopeQuantities envelope(const HouseParams& p) {
  return {volume(p), external_surface(p), floor_area(p)};
}

AspectRatios ratios_of(const HouseParams& p) {
  validate(p);
  return {p.length / p.width, p.height / p.width};
}

double gamma(double r, double k, double alpha) {
  require_positive(r, "r", ErrorCode::invalid_ratio);
  require_positive(k, "k", ErrorCode::invalid_ratio);
  require_alpha(alpha);
  const double numerator = 2.0 * k + 2.0 * r * k + r / std::cos(alpha);
  return numerator / std::cbrt(r * k * r * k);
}

double surface_from_ratios(double volume, double r, double k, double alpha) {
  require_positive(volume, "volume", ErrorCode::invalid_volume);
  const double v13 = std::cbrt(volume);
  return v13 * v13 * gamma(r, k, alpha);
}

HouseParams house_from_ratios(double volume, double r, double k, double alpha) {
  require_positive(volume, "volume", ErrorCode::invalid_volume);
  require_positive(r, "r", ErrorCode::invalid_ratio);
  require_positive(k, "k", ErrorCode::invalid_ratio);
  require_alpha(alpha);
  const double w = std::cbrt(volume / (r * k));
  return {w, w * r, w * k, alpha};
}

HouseParams scaled(const HouseParams& p, double lambda) {
  require_positive(lambda, "lambda", ErrorCode::invalid_dimension);
  return {p.width * lambda, p.length * lambda, p.height * lambda, p.alpha};
}

CompactnessReport compactness(const HouseParams& p, double min_surface) {
  require_positive(min_surface, "min_surface", ErrorCode::invalid_min_surface);
  const double s = external_surface(p);
  return {s, min_surface, s / min_surface, s - min_surface};
}

}  // namespace hiproof
