#include <cmath>
#include <numbers>

#include <doctest.h>

#include "hiproof/geometry.hpp"
#include "hiproof/optimizers.hpp"
#include "support.hpp"

using namespace hiproof;
using hiproof::test::Gen;
using hiproof::test::rel_close;

namespace {

const HouseParams kHouseA{10.9, 26.7, 7.2, deg_to_rad(50)};
const HouseParams kHouseB{9.5, 16.7, 2.6, deg_to_rad(30)};
const HouseParams kHouseC{12.5, 12.5, 7.9, deg_to_rad(35)};

double round_to(double v, int decimals) {
  const double scale = std::pow(10.0, decimals);
  return std::round(v * scale) / scale;
}

}  // namespace

TEST_CASE("volume") {
  CHECK(volume({1, 1, 1, deg_to_rad(30)}) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::abs(volume(kHouseA) - 2095.4) <= 0.05);
  // 8.85^2 * 5.11
  CHECK(volume({8.85, 8.85, 5.11, deg_to_rad(30)}) == doctest::Approx(400.227975).epsilon(1e-12));
}

TEST_CASE("external surface") {
  CHECK(std::abs(external_surface(kHouseA) - 994.2) <= 0.1);
  CHECK(external_surface({2, 2, 2, deg_to_rad(60)}) == doctest::Approx(24.0).epsilon(1e-14));
  CHECK(external_surface({1, 1, 1, deg_to_rad(45)}) == doctest::Approx(4.0 + std::sqrt(2.0)).epsilon(1e-14));
}

TEST_CASE("envelope and floor area") {
  const EnvelopeQuantities e = envelope(kHouseB);
  CHECK(e.volume == 9.5 * 16.7 * 2.6);
  CHECK(e.floor_area == 9.5 * 16.7);
  CHECK(e.surface > 0.0);
}

TEST_CASE("gamma") {
  const double c30 = std::cos(deg_to_rad(30));
  // At the fixed-volume optimum gamma equals 3 * 2^(2/3) / cos^(1/3)(alpha) = 4.99610.
  CHECK(gamma(1.0, 0.57735, deg_to_rad(30)) == doctest::Approx(3.0 * std::cbrt(4.0) / std::cbrt(c30)).epsilon(1e-8));
  CHECK(gamma(1.0, 0.57735, deg_to_rad(30)) == doctest::Approx(4.9961).epsilon(1e-5));
  CHECK(gamma(1.0, 1.0, deg_to_rad(60)) == doctest::Approx(6.0).epsilon(1e-14));
  CHECK(gamma(1.0, 0.5, deg_to_rad(60)) == doctest::Approx(4.0 / std::pow(0.5, 2.0 / 3.0)).epsilon(1e-14));
  CHECK(gamma(1.0, 0.5, deg_to_rad(60)) == doctest::Approx(6.3496).epsilon(1e-5));
}

TEST_CASE("surface from ratios") {
  CHECK(std::abs(surface_from_ratios(400, 1.0, 0.57735, deg_to_rad(30)) - 271.23) <= 0.01);
  CHECK(surface_from_ratios(8, 1.0, 1.0, deg_to_rad(60)) == doctest::Approx(24.0).epsilon(1e-14));
  CHECK(std::abs(surface_from_ratios(400, 1.5, 0.69, deg_to_rad(30)) - 274.95) <= 0.05);
}

TEST_CASE("ratios_of") {
  const AspectRatios cube = ratios_of({10, 10, 10, deg_to_rad(30)});
  CHECK(cube.r == 1.0);
  CHECK(cube.k == 1.0);

  // The case-study tables print r with one decimal and k with two.
  const AspectRatios a = ratios_of(kHouseA);
  CHECK(round_to(a.r, 1) == doctest::Approx(2.4));
  CHECK(round_to(a.k, 2) == doctest::Approx(0.66));
  CHECK(a.r == 26.7 / 10.9);
  CHECK(a.k == 7.2 / 10.9);

  const AspectRatios b = ratios_of(kHouseB);
  CHECK(b.r == doctest::Approx(1.758).epsilon(1e-3));
  CHECK(b.k == doctest::Approx(0.2737).epsilon(1e-3));
}

TEST_CASE("compactness against the fixed-volume optimum") {
  const auto against_s1 = [](const HouseParams& p) {
    return compactness(p, optimize_fixed_volume(volume(p), p.alpha).surface);
  };
  CHECK(std::abs(against_s1(kHouseC).ratio - 1.00) <= 0.005);
  CHECK(std::abs(against_s1(kHouseB).ratio - 1.15) <= 0.01);

  const OptimalDesign opt = optimize_fixed_volume(400, deg_to_rad(30));
  const CompactnessReport self = compactness(house_of(opt, deg_to_rad(30)), opt.surface);
  CHECK(self.ratio == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(self.surplus) <= 1e-9);

  const CompactnessReport b = against_s1(kHouseB);
  CHECK(b.surplus == b.surface - b.min_surface);
  CHECK(b.ratio == b.surface / b.min_surface);
}

TEST_CASE("domain errors name the offending field") {
  const auto field_of = [](auto&& f) -> std::string {
    try {
      f();
    } catch (const DomainError& e) {
      return e.field();
    }
    return "<none>";
  };
  CHECK(field_of([] { volume({-1, 1, 1, 0.5}); }) == "width");
  CHECK(field_of([] { volume({1, 0, 1, 0.5}); }) == "length");
  CHECK(field_of([] { external_surface({1, 1, NAN, 0.5}); }) == "height");
  CHECK(field_of([] { external_surface({1, 1, 1, std::numbers::pi / 2}); }) == "alpha");
  CHECK(field_of([] { external_surface({1, 1, 1, 0.0}); }) == "alpha");
  CHECK(field_of([] { external_surface({1, 1, 1, -0.1}); }) == "alpha");
  CHECK(field_of([] { gamma(0, 1, 0.5); }) == "r");
  CHECK(field_of([] { gamma(1, -2, 0.5); }) == "k");
  CHECK(field_of([] { surface_from_ratios(0, 1, 1, 0.5); }) == "volume");
  CHECK(field_of([] { compactness({1, 1, 1, 0.5}, 0.0); }) == "min_surface");

  CHECK_THROWS_AS(gamma(1, 1, deg_to_rad(90)), DomainError);
  CHECK_NOTHROW(gamma(1, 1, deg_to_rad(89.999)));
  CHECK_NOTHROW(gamma(1, 1, 2e-9));
  CHECK_THROWS_AS(gamma(1, 1, 1e-9), DomainError);
}

TEST_CASE("property: ratio form agrees with the dimensional form") {
  Gen gen(11);
  for (int i = 0; i < 2000; ++i) {
    const double v = gen.uniform(1.0, 1e5);
    const double r = gen.uniform(0.05, 10.0);
    const double k = gen.uniform(0.05, 10.0);
    const double alpha = deg_to_rad(gen.uniform(1.0, 89.0));
    const HouseParams p = house_from_ratios(v, r, k, alpha);
    REQUIRE(rel_close(surface_from_ratios(v, r, k, alpha), external_surface(p), 1e-12));
    REQUIRE(rel_close(volume(p), v, 1e-12));
  }
}

TEST_CASE("property: scale law") {
  Gen gen(12);
  for (int i = 0; i < 2000; ++i) {
    const HouseParams p{gen.uniform(1, 30), gen.uniform(1, 30), gen.uniform(1, 15), deg_to_rad(gen.uniform(5, 85))};
    const double lambda = gen.uniform(0.01, 100.0);
    const HouseParams q = scaled(p, lambda);
    REQUIRE(rel_close(external_surface(q), lambda * lambda * external_surface(p), 1e-12));
    REQUIRE(rel_close(volume(q), lambda * lambda * lambda * volume(p), 1e-12));
  }
}

TEST_CASE("property: compactness is scale invariant") {
  Gen gen(13);
  for (int i = 0; i < 500; ++i) {
    const HouseParams p{gen.uniform(3, 30), gen.uniform(3, 30), gen.uniform(2, 12), deg_to_rad(gen.uniform(10, 75))};
    const double base = compactness(p, optimize_fixed_volume(volume(p), p.alpha).surface).ratio;
    for (double lambda : {0.1, 1.0, 10.0}) {
      const HouseParams q = scaled(p, lambda);
      const double ratio = compactness(q, optimize_fixed_volume(volume(q), q.alpha).surface).ratio;
      REQUIRE(rel_close(ratio, base, 1e-9));
    }
    REQUIRE(base >= 1.0 - kRatioEpsilon);
  }
}

TEST_CASE("property: gamma is positive and bounded below by its minimum") {
  Gen gen(14);
  for (double deg : {15.0, 30.0, 45.0, 60.0, 75.0}) {
    const double alpha = deg_to_rad(deg);
    const double floor = gamma(1.0, 1.0 / (2.0 * std::cos(alpha)), alpha);
    for (int i = 0; i < 10000; ++i) {
      const double r = gen.uniform(0.01, 20.0);
      const double k = gen.uniform(0.01, 20.0);
      const double g = gamma(r, k, alpha);
      REQUIRE(g > 0.0);
      REQUIRE(g >= floor - 1e-9);
    }
  }
}
