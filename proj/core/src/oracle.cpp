#include "hiproof/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include <fmt/format.h>

namespace hiproof::oracle {

namespace {

void require_axis(Range range, std::size_t n, const char* name) {
  if (!std::isfinite(range.lo) || !std::isfinite(range.hi) || range.lo <= 0.0 || !(range.hi > range.lo)) {
    throw DomainError(ErrorCode::invalid_range, name,
                      fmt::format("{} range must satisfy 0 < lo < hi (got [{}, {}])", name, range.lo, range.hi));
  }
  if (n < 2) {
    throw DomainError(ErrorCode::invalid_range, name,
                      fmt::format("{} axis needs at least 2 samples (got {})", name, n));
  }
}

double step_of(Range range, std::size_t n) { return (range.hi - range.lo) / static_cast<double>(n - 1); }

double median(std::vector<double> values) {
  if (values.empty()) return 0.0;
  const auto mid = values.begin() + static_cast<std::ptrdiff_t>(values.size() / 2);
  std::nth_element(values.begin(), mid, values.end());
  if (values.size() % 2 == 1) return *mid;
  const double upper = *mid;
  const double lower = *std::max_element(values.begin(), mid);
  return 0.5 * (lower + upper);
}

template <class F>
LineMinimum scan_line(Range range, std::size_t n, F&& f) {
  LineMinimum best{0.0, HUGE_VAL};
  for (double x : linspace(range, n)) {
    const double v = f(x);
    if (v < best.value) best = {x, v};
  }
  return best;
}

}  // namespace

void validate(const GridSpec& spec) {
  require_axis(spec.r, spec.n_r, "r");
  require_axis(spec.k, spec.n_k, "k");
}

std::vector<double> linspace(Range range, std::size_t n) {
  std::vector<double> out(n);
  const double span = range.hi - range.lo;
  const double denom = static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = range.lo + span * (static_cast<double>(i) / denom);
  }
  out.back() = range.hi;
  return out;
}

GammaMinimum grid_min_gamma(double alpha, const GridSpec& spec) {
  validate(spec);
  require_alpha(alpha);
  const auto rs = linspace(spec.r, spec.n_r);
  const auto ks = linspace(spec.k, spec.n_k);
  GammaMinimum best{0.0, 0.0, HUGE_VAL};
  for (double r : rs) {
    for (double k : ks) {
      const double g = gamma(r, k, alpha);
      if (g < best.gamma) best = {r, k, g};
    }
  }
  return best;
}

LineMinimum grid_min_gamma_fixed_r(double alpha, double r, Range k_range, std::size_t n) {
  require_axis(k_range, n, "k");
  require_positive(r, "r", ErrorCode::invalid_ratio);
  require_alpha(alpha);
  return scan_line(k_range, n, [&](double k) { return gamma(r, k, alpha); });
}

LineMinimum grid_min_gamma_fixed_k(double alpha, double k, Range r_range, std::size_t n) {
  require_axis(r_range, n, "r");
  require_positive(k, "k", ErrorCode::invalid_ratio);
  require_alpha(alpha);
  return scan_line(r_range, n, [&](double r) { return gamma(r, k, alpha); });
}

LineMinimum grid_min_surface_w(double floor_area, double height, double alpha, Range w_range, std::size_t n) {
  require_axis(w_range, n, "width");
  require_positive(floor_area, "floor_area", ErrorCode::invalid_floor_area);
  require_positive(height, "height", ErrorCode::invalid_dimension);
  require_alpha(alpha);
  return scan_line(w_range, n, [&](double w) {
    return external_surface(HouseParams{w, floor_area / w, height, alpha});
  });
}

WidthHeightMinimum grid_min_surface_wh(double volume, double alpha, Range w_range, Range h_range, std::size_t n) {
  require_positive(volume, "volume", ErrorCode::invalid_volume);
  require_alpha(alpha);
  require_axis(w_range, n, "width");
  require_axis(h_range, n, "height");
  const double c = std::cos(alpha);
  const auto ws = linspace(w_range, n);
  const auto hs = linspace(h_range, n);
  WidthHeightMinimum best{0.0, 0.0, HUGE_VAL};
  for (double w : ws) {
    for (double h : hs) {
      const double s = 2.0 * w * h + 2.0 * volume / w + volume / (h * c);
      if (s < best.surface) best = {w, h, s};
    }
  }
  return best;
}

WidthHeightMinimum grid_min_surface_wh(double volume, double alpha, double a, double b, std::size_t n) {
  require_positive(volume, "volume", ErrorCode::invalid_volume);
  require_positive(a, "min_height", ErrorCode::invalid_range);
  require_positive(b, "max_height", ErrorCode::invalid_range);
  if (!(a < b)) {
    throw DomainError(ErrorCode::invalid_range, "min_height", "height range requires min_height < max_height");
  }
  // For any fixed H the width minimizing S is sqrt(V/H), so this W span
  // contains every candidate optimum with margin on both sides.
  const Range w_range{0.5 * std::sqrt(volume / b), 2.0 * std::sqrt(volume / a)};
  return grid_min_surface_wh(volume, alpha, w_range, Range{a, b}, n);
}

ContourGrid contour_grid(double volume, double alpha, const GridSpec& spec, unsigned threads) {
  validate(spec);
  require_positive(volume, "volume", ErrorCode::invalid_volume);
  require_alpha(alpha);

  ContourGrid grid;
  grid.r_axis = linspace(spec.r, spec.n_r);
  grid.k_axis = linspace(spec.k, spec.n_k);
  grid.surface.assign(spec.n_r * spec.n_k, 0.0);

  const std::size_t rows = spec.n_k;
  auto fill_rows = [&](std::size_t first, std::size_t last) {
    for (std::size_t j = first; j < last; ++j) {
      for (std::size_t i = 0; i < spec.n_r; ++i) {
        grid.surface[j * spec.n_r + i] = surface_from_ratios(volume, grid.r_axis[i], grid.k_axis[j], alpha);
      }
    }
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, rows));
  if (threads <= 1) {
    fill_rows(0, rows);
  } else {
    std::vector<std::jthread> workers;
    const std::size_t chunk = (rows + threads - 1) / threads;
    for (std::size_t first = 0; first < rows; first += chunk) {
      workers.emplace_back(fill_rows, first, std::min(rows, first + chunk));
    }
  }

  // Sequential scan keeps the tie-breaking independent of the fill order.
  ContourGrid::MinPoint best{0.0, 0.0, HUGE_VAL};
  for (std::size_t i = 0; i < spec.n_r; ++i) {
    for (std::size_t j = 0; j < rows; ++j) {
      const double s = grid.at(j, i);
      if (s < best.s) best = {grid.r_axis[i], grid.k_axis[j], s};
    }
  }
  grid.min_point = best;
  return grid;
}

OracleComparison compare_with_oracle(const ScenarioSpec& spec, std::size_t n) {
  const OptimalDesign design = optimize(spec);
  OracleComparison out;
  out.scenario = scenario_of(spec);
  out.closed_form = design.surface;

  struct Grid {
    std::size_t n;
    OracleComparison& out;

    void operator()(const FixedVolume& s) const {
      const GridSpec grid{Range{0.2, 5.0}, Range{0.1, 3.0}, n, n};
      const GammaMinimum m = grid_min_gamma(s.alpha, grid);
      out.oracle = surface_from_ratios(s.volume, m.r, m.k, s.alpha);
      out.bound = 2.0 * std::max(step_of(grid.r, n) / m.r, step_of(grid.k, n) / m.k);
    }
    void operator()(const FixedFootprintRatio& s) const {
      const Range k_range{0.05, 5.0};
      const LineMinimum m = grid_min_gamma_fixed_r(s.alpha, s.r, k_range, n);
      out.oracle = surface_from_ratios(s.volume, s.r, m.x, s.alpha);
      out.bound = 2.0 * step_of(k_range, n) / m.x;
    }
    void operator()(const FixedSlenderness& s) const {
      const Range r_range{0.05, 5.0};
      const LineMinimum m = grid_min_gamma_fixed_k(s.alpha, s.k, r_range, n);
      out.oracle = surface_from_ratios(s.volume, m.x, s.k, s.alpha);
      out.bound = 2.0 * step_of(r_range, n) / m.x;
    }
    void operator()(const FixedFloorArea& s) const {
      // The span depends on H as well so the optimum does not sit at the same
      // relative grid offset for every floor area.
      const double scale = std::sqrt(s.floor_area);
      const Range w_range{0.1 * scale, 4.0 * scale + s.height};
      const LineMinimum m = grid_min_surface_w(s.floor_area, s.height, s.alpha, w_range, n);
      out.oracle = m.value;
      out.bound = 2.0 * step_of(w_range, n) / m.x;
    }
    void operator()(const HeightRange& s) const {
      const Range w_range{0.5 * std::sqrt(s.volume / s.max_height), 2.0 * std::sqrt(s.volume / s.min_height)};
      const Range h_range{s.min_height, s.max_height};
      const WidthHeightMinimum m = grid_min_surface_wh(s.volume, s.alpha, w_range, h_range, n);
      out.oracle = m.surface;
      out.bound = 2.0 * std::max(step_of(w_range, n) / m.width, step_of(h_range, n) / m.height);
    }
  };
  std::visit(Grid{n, out}, spec);
  out.relative_gap = (out.oracle - out.closed_form) / out.closed_form;
  return out;
}

double SpecSampler::uniform(double lo, double hi) {
  const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

ScenarioSpec SpecSampler::draw(Scenario scenario) {
  const double alpha = deg_to_rad(uniform(10.0, 75.0));
  switch (scenario) {
    case Scenario::fixed_volume:
      return FixedVolume{uniform(50.0, 5000.0), alpha};
    case Scenario::fixed_r: {
      const double v = uniform(50.0, 5000.0);
      return FixedFootprintRatio{v, alpha, uniform(0.3, 4.0)};
    }
    case Scenario::fixed_k: {
      const double v = uniform(50.0, 5000.0);
      return FixedSlenderness{v, alpha, uniform(0.2, 2.0)};
    }
    case Scenario::fixed_floor: {
      const double f = uniform(30.0, 500.0);
      return FixedFloorArea{f, uniform(2.0, 12.0), alpha};
    }
    case Scenario::height_range: {
      const double v = uniform(50.0, 5000.0);
      const double a = uniform(1.0, 10.0);
      return HeightRange{v, alpha, a, a + uniform(0.5, 5.0)};
    }
  }
  return FixedVolume{400.0, alpha};
}

std::vector<ScenarioVerification> verify_closed_forms(const VerificationOptions& options) {
  constexpr double kDominanceSlack = 1e-9;
  std::vector<ScenarioVerification> report;
  for (Scenario scenario : {Scenario::fixed_volume, Scenario::fixed_r, Scenario::fixed_k, Scenario::fixed_floor,
                            Scenario::height_range}) {
    const bool two_d = scenario == Scenario::fixed_volume || scenario == Scenario::height_range;
    const std::size_t n = two_d ? options.grid_2d : options.grid_1d;
    // Nested refinement: every coarse node stays a node of the fine grid.
    const std::size_t n_fine = 2 * n - 1;

    SpecSampler sampler(options.seed + static_cast<std::uint64_t>(scenario));
    ScenarioVerification v;
    v.scenario = scenario;
    v.samples = options.samples;
    std::vector<double> coarse_gaps;
    std::vector<double> fine_gaps;
    for (std::size_t i = 0; i < options.samples; ++i) {
      const ScenarioSpec spec = sampler.draw(scenario);
      const OracleComparison coarse = compare_with_oracle(spec, n);
      const OracleComparison fine = compare_with_oracle(spec, n_fine);
      for (const auto* c : {&coarse, &fine}) {
        if (c->closed_form > c->oracle + kDominanceSlack) ++v.dominance_failures;
        if (c->relative_gap > c->bound) ++v.bound_failures;
      }
      v.max_gap = std::max(v.max_gap, coarse.relative_gap);
      coarse_gaps.push_back(coarse.relative_gap);
      fine_gaps.push_back(fine.relative_gap);
    }
    v.median_gap = median(coarse_gaps);
    v.median_gap_refined = median(fine_gaps);
    v.refinement_halves_gap = v.median_gap_refined <= 0.5 * v.median_gap;
    report.push_back(v);
  }
  return report;
}

}  // namespace hiproof::oracle
