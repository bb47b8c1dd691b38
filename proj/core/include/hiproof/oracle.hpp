#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "hiproof/geometry.hpp"
#include "hiproof/optimizers.hpp"

// Brute-force minimization over linearly spaced grids. Nothing here uses the
// closed-form optima: every value comes from evaluating the envelope surface
// directly, so the results can be used to check the optimizers.

namespace hiproof::oracle {

struct Range {
  double lo = 0.0;
  double hi = 0.0;
};

/// Sampling of the (r, k) plane. Defaults cover every optimum of practical
/// roof slopes with sub-percent resolution near the minimum.
struct GridSpec {
  Range r{0.2, 5.0};
  Range k{0.1, 3.0};
  std::size_t n_r = 201;
  std::size_t n_k = 201;
};

void validate(const GridSpec& spec);

/// n samples from lo to hi inclusive; sample i = lo + (hi - lo) * i / (n - 1).
std::vector<double> linspace(Range range, std::size_t n);

struct GammaMinimum {
  double r = 0.0;
  double k = 0.0;
  double gamma = 0.0;
};

/// Exhaustive argmin of gamma over the grid. Ties go to the smallest r, then
/// the smallest k.
GammaMinimum grid_min_gamma(double alpha, const GridSpec& spec);

struct LineMinimum {
  double x = 0.0;
  double value = 0.0;
};

/// argmin over k of gamma(r, k) with r held fixed.
LineMinimum grid_min_gamma_fixed_r(double alpha, double r, Range k_range, std::size_t n);
/// argmin over r of gamma(r, k) with k held fixed.
LineMinimum grid_min_gamma_fixed_k(double alpha, double k, Range r_range, std::size_t n);
/// argmin over W of S(W) = 2WH + 2FH/W + F/cos(alpha).
LineMinimum grid_min_surface_w(double floor_area, double height, double alpha, Range w_range, std::size_t n);

struct WidthHeightMinimum {
  double width = 0.0;
  double height = 0.0;
  double surface = 0.0;
};

/// argmin of S(W, H) = 2WH + 2V/W + V/(H cos(alpha)) over an n x n grid with
/// H spanning [a, b] and W spanning [sqrt(V/b)/2, 2 sqrt(V/a)].
WidthHeightMinimum grid_min_surface_wh(double volume, double alpha, double a, double b, std::size_t n);
WidthHeightMinimum grid_min_surface_wh(double volume, double alpha, Range w_range, Range h_range,
                                       std::size_t n);

/// Envelope surface sampled over (r, k) at a fixed volume.
struct ContourGrid {
  struct MinPoint {
    double r = 0.0;
    double k = 0.0;
    double s = 0.0;
  };

  std::vector<double> r_axis;
  std::vector<double> k_axis;
  std::vector<double> surface;  // row-major, k_axis.size() rows x r_axis.size() columns
  MinPoint min_point;

  double at(std::size_t k_index, std::size_t r_index) const { return surface[k_index * r_axis.size() + r_index]; }
};

/// `threads` = 0 picks the hardware concurrency. The result does not depend
/// on the thread count.
ContourGrid contour_grid(double volume, double alpha, const GridSpec& spec, unsigned threads = 0);

// ---------------------------------------------------------------------------
// Closed form versus grid search.

struct OracleComparison {
  Scenario scenario = Scenario::fixed_volume;
  double closed_form = 0.0;  // S_min from the optimizer
  double oracle = 0.0;       // best grid surface
  double relative_gap = 0.0; // (oracle - closed_form) / closed_form
  double bound = 0.0;        // 2 x largest per-axis relative step at the grid argmin
};

/// Grid search for `spec` with `n` samples per free axis.
OracleComparison compare_with_oracle(const ScenarioSpec& spec, std::size_t n);

/// Deterministic 64-bit Mersenne Twister; uniform draws are built from raw
/// bits so sequences match across standard libraries.
class SpecSampler {
 public:
  explicit SpecSampler(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo, double hi);
  ScenarioSpec draw(Scenario scenario);

 private:
  std::mt19937_64 engine_;
};

struct ScenarioVerification {
  Scenario scenario = Scenario::fixed_volume;
  std::size_t samples = 0;
  std::size_t dominance_failures = 0;  // closed form above oracle + 1e-9
  std::size_t bound_failures = 0;      // gap beyond the resolution bound
  double max_gap = 0.0;
  double median_gap = 0.0;
  double median_gap_refined = 0.0;     // same specs, grid refined to 2n - 1
  bool refinement_halves_gap = false;

  bool passed() const { return dominance_failures == 0 && bound_failures == 0 && refinement_halves_gap; }
};

struct VerificationOptions {
  std::size_t samples = 200;
  std::uint64_t seed = 20251016;
  std::size_t grid_1d = 201;
  std::size_t grid_2d = 201;
};

std::vector<ScenarioVerification> verify_closed_forms(const VerificationOptions& options = {});

}  // namespace hiproof::oracle
