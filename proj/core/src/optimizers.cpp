#include "hiproof/optimizers.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace hiproof {

std::string_view to_string(Scenario s) noexcept {
  switch (s) {
    case Scenario::fixed_volume: return "fixed-volume";
    case Scenario::fixed_r: return "fixed-r";
    case Scenario::fixed_k: return "fixed-k";
    case Scenario::fixed_floor: return "fixed-floor";
    case Scenario::height_range: return "height-range";
  }
  return "unknown";
}

std::optional<Scenario> scenario_from_string(std::string_view name) noexcept {
  for (Scenario s : {Scenario::fixed_volume, Scenario::fixed_r, Scenario::fixed_k, Scenario::fixed_floor,
                     Scenario::height_range}) {
    if (to_string(s) == name) return s;
  }
  return std::nullopt;
}

std::string_view to_string(ActiveBound b) noexcept {
  switch (b) {
    case ActiveBound::lower: return "lower";
    case ActiveBound::interior: return "interior";
    case ActiveBound::upper: return "upper";
  }
  return "unknown";
}

Scenario scenario_of(const ScenarioSpec& spec) noexcept {
  return static_cast<Scenario>(spec.index());
}

double alpha_of(const ScenarioSpec& spec) noexcept {
  return std::visit([](const auto& s) { return s.alpha; }, spec);
}

namespace {

void require_at_most(double value, double cap, const char* field) {
  if (value > cap) {
    throw DomainError(ErrorCode::implausible_input, field,
                      fmt::format("{} = {} exceeds the plausibility cap {}", field, value, cap));
  }
}

void check_volume(double v, const InputLimits& limits) {
  require_positive(v, "volume", ErrorCode::invalid_volume);
  require_at_most(v, limits.max_volume, "volume");
}

void check_length(double x, const char* field, ErrorCode code, const InputLimits& limits) {
  require_positive(x, field, code);
  require_at_most(x, limits.max_dimension, field);
}

struct Validator {
  const InputLimits& limits;

  void operator()(const FixedVolume& s) const {
    check_volume(s.volume, limits);
    require_alpha(s.alpha);
  }
  void operator()(const FixedFootprintRatio& s) const {
    check_volume(s.volume, limits);
    require_alpha(s.alpha);
    require_positive(s.r, "r", ErrorCode::invalid_ratio);
  }
  void operator()(const FixedSlenderness& s) const {
    check_volume(s.volume, limits);
    require_alpha(s.alpha);
    require_positive(s.k, "k", ErrorCode::invalid_ratio);
  }
  void operator()(const FixedFloorArea& s) const {
    require_positive(s.floor_area, "floor_area", ErrorCode::invalid_floor_area);
    require_at_most(s.floor_area, limits.max_dimension * limits.max_dimension, "floor_area");
    check_length(s.height, "height", ErrorCode::invalid_dimension, limits);
    require_alpha(s.alpha);
  }
  void operator()(const HeightRange& s) const {
    check_volume(s.volume, limits);
    require_alpha(s.alpha);
    check_length(s.min_height, "min_height", ErrorCode::invalid_range, limits);
    check_length(s.max_height, "max_height", ErrorCode::invalid_range, limits);
    if (!(s.min_height < s.max_height)) {
      throw DomainError(ErrorCode::invalid_range, "min_height",
                        fmt::format("height range requires min_height < max_height (got {} and {})",
                                    s.min_height, s.max_height));
    }
  }
};

// Assembles a design from W, L, H and fills the derived ratios.
OptimalDesign make_design(Scenario scenario, double w, double l, double h, double s, double v) {
  OptimalDesign d;
  d.scenario = scenario;
  d.width = w;
  d.length = l;
  d.height = h;
  d.surface = s;
  d.r = l / w;
  d.k = h / w;
  d.volume = v;
  return d;
}

}  // namespace

void validate(const ScenarioSpec& spec, const InputLimits& limits) {
  std::visit(Validator{limits}, spec);
}

void check_limits(const HouseParams& p, const InputLimits& limits) {
  check_length(p.width, "width", ErrorCode::invalid_dimension, limits);
  check_length(p.length, "length", ErrorCode::invalid_dimension, limits);
  check_length(p.height, "height", ErrorCode::invalid_dimension, limits);
  require_alpha(p.alpha);
  require_at_most(p.width * p.length * p.height, limits.max_volume, "volume");
}

OptimalDesign optimize_fixed_volume(double volume, double alpha, const InputLimits& limits) {
  validate(FixedVolume{volume, alpha}, limits);
  const double c = std::cos(alpha);
  const double w = std::cbrt(2.0 * volume * c);
  const double h = std::cbrt(volume / (4.0 * c * c));
  const double v23 = std::cbrt(2.0 * volume) * std::cbrt(2.0 * volume);
  const double s = 3.0 * v23 / std::cbrt(c);
  OptimalDesign d = make_design(Scenario::fixed_volume, w, w, h, s, volume);
  d.r = 1.0;
  d.k = 1.0 / (2.0 * c);
  return d;
}

OptimalDesign optimize_fixed_r(double volume, double alpha, double r, const InputLimits& limits) {
  validate(FixedFootprintRatio{volume, alpha, r}, limits);
  const double c = std::cos(alpha);
  const double k = r / ((r + 1.0) * c);
  const double w = std::cbrt(volume * c * (r + 1.0) / (r * r));
  const double v13 = std::cbrt(volume);
  const double q = std::cbrt(r * r / (c * (r + 1.0)));
  const double s = 3.0 * r * v13 * v13 / (c * q * q);
  OptimalDesign d = make_design(Scenario::fixed_r, w, r * w, k * w, s, volume);
  d.r = r;
  d.k = k;
  return d;
}

OptimalDesign optimize_fixed_k(double volume, double alpha, double k, const InputLimits& limits) {
  validate(FixedSlenderness{volume, alpha, k}, limits);
  const double c = std::cos(alpha);
  const double r = 4.0 * k * c / (2.0 * k * c + 1.0);
  const double q13 = std::cbrt((2.0 * k * c + 1.0) / (4.0 * k * k * c));
  const double v13 = std::cbrt(volume);
  const double w = v13 * q13;
  const double s = 6.0 * k * v13 * v13 * q13 * q13;
  OptimalDesign d = make_design(Scenario::fixed_k, w, r * w, k * w, s, volume);
  d.r = r;
  d.k = k;
  return d;
}

OptimalDesign optimize_fixed_floor(double floor_area, double height, double alpha, const InputLimits& limits) {
  validate(FixedFloorArea{floor_area, height, alpha}, limits);
  const double w = std::sqrt(floor_area);
  // S(W) = 2WH + 2FH/W + F/cos(alpha) at W = sqrt(F).
  const double s = 2.0 * w * height + 2.0 * floor_area * height / w + floor_area / std::cos(alpha);
  OptimalDesign d = make_design(Scenario::fixed_floor, w, w, height, s, floor_area * height);
  d.r = 1.0;
  return d;
}

double h_crit(double volume, double alpha) {
  require_positive(volume, "volume", ErrorCode::invalid_volume);
  require_alpha(alpha);
  const double c = std::cos(alpha);
  return std::cbrt(volume / (4.0 * c * c));
}

OptimalDesign optimize_height_range(double volume, double alpha, double min_height, double max_height,
                                    const InputLimits& limits) {
  validate(HeightRange{volume, alpha, min_height, max_height}, limits);
  const double c = std::cos(alpha);
  const double crit = h_crit(volume, alpha);

  KktDiagnostics kkt;
  kkt.h_crit = crit;

  if (crit > min_height && crit < max_height) {
    OptimalDesign d = optimize_fixed_volume(volume, alpha, limits);
    d.scenario = Scenario::height_range;
    kkt.active = ActiveBound::interior;
    d.kkt = kkt;
    return d;
  }

  const bool lower = crit <= min_height;
  const double h = lower ? min_height : max_height;
  const double w = std::sqrt(volume / h);
  const double l = volume / (w * h);
  const double s = 2.0 * w * h + 2.0 * volume / w + volume / (h * c);
  // The multiplier of the binding bound is nonnegative on its branch; the
  // clamp only absorbs rounding when H_crit sits on the bound.
  if (lower) {
    kkt.active = ActiveBound::lower;
    kkt.mu1 = std::max(0.0, 2.0 * w - volume / (h * h * c));
  } else {
    kkt.active = ActiveBound::upper;
    kkt.mu2 = std::max(0.0, volume / (h * h * c) - 2.0 * w);
  }
  OptimalDesign d = make_design(Scenario::height_range, w, l, h, s, volume);
  d.kkt = kkt;
  return d;
}

OptimalDesign optimize(const ScenarioSpec& spec, const InputLimits& limits) {
  struct Dispatch {
    const InputLimits& limits;
    OptimalDesign operator()(const FixedVolume& s) const { return optimize_fixed_volume(s.volume, s.alpha, limits); }
    OptimalDesign operator()(const FixedFootprintRatio& s) const {
      return optimize_fixed_r(s.volume, s.alpha, s.r, limits);
    }
    OptimalDesign operator()(const FixedSlenderness& s) const {
      return optimize_fixed_k(s.volume, s.alpha, s.k, limits);
    }
    OptimalDesign operator()(const FixedFloorArea& s) const {
      return optimize_fixed_floor(s.floor_area, s.height, s.alpha, limits);
    }
    OptimalDesign operator()(const HeightRange& s) const {
      return optimize_height_range(s.volume, s.alpha, s.min_height, s.max_height, limits);
    }
  };
  return std::visit(Dispatch{limits}, spec);
}

}  // namespace hiproof
