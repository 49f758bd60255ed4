#include <doctest.h>

#include <cmath>
#include <initializer_list>
#include <numbers>
#include <vector>

#include "ndpo/analytic.hpp"
#include "ndpo/error.hpp"
#include "ndpo/fringe.hpp"

using namespace ndpo;
constexpr double kPi = std::numbers::pi;

TEST_CASE("phase grid is half-open") {
  const auto g = phase_grid(4, 0.0, 2.0 * kPi);
  REQUIRE(g.size() == 4);
  CHECK(g[0] == 0.0);
  CHECK(g[3] == doctest::Approx(1.5 * kPi));
  CHECK(phase_grid().size() == kDefaultPhasePoints);
}

TEST_CASE("extrema refinement reaches off-grid optima") {
  auto f = [](double phi) { return 2.0 + std::cos(phi - 0.123); };
  const auto grid = phase_grid(17);
  const auto e = locate_extrema(f, grid);
  CHECK(e.value_max == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(e.value_min == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(e.phi_max == doctest::Approx(0.123).epsilon(1e-5));
  CHECK(visibility(f, grid) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("undefined visibility of an all-zero fringe") {
  CHECK_THROWS_AS(visibility_from_extrema(0.0, 0.0), UndefinedVisibilityError);
  const auto grid = phase_grid(33);
  const auto pat = sample_fringe(2, [](double) { return 0.0; }, 0.0, grid, RegimeTag::Below);
  CHECK_FALSE(pat.visibility_defined);
  CHECK(std::isnan(pat.visibility));
  CHECK_THROWS_AS(visibility(pat), UndefinedVisibilityError);
}

TEST_CASE("sampled fringe columns") {
  const auto grid = phase_grid(73);
  const double log_scale = 50.0;
  const auto pat = sample_fringe(2, [](double phi) { return rate_below(2, 0.5, phi); }, log_scale, grid,
                                 RegimeTag::Below);
  REQUIRE(pat.rates.size() == grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK(pat.log_rates[i] == doctest::Approx(log_scale + std::log(rate_below(2, 0.5, grid[i]))).epsilon(1e-14));
    CHECK(pat.normalized[i] <= 1.0);
  }
  CHECK(pat.visibility == doctest::Approx(0.5).epsilon(1e-12));
  CHECK_THROWS_AS(sample_fringe(2, [](double phi) { return std::cos(phi); }, 0.0, grid, RegimeTag::Below),
                  DomainError);
}

TEST_CASE("fringes are pi-periodic and even") {
  const auto grid = phase_grid(101);
  for (double r : {0.15, 0.9})
    for (int p = 2; p <= 6; ++p) {
      auto f = [p, r](double phi) { return rate_below(p, r, phi); };
      CHECK(shift_mismatch(f, grid, kPi) < 1e-12);
      double worst = 0.0;
      for (double phi : grid) worst = std::max(worst, std::abs(f(phi) - f(-phi)) / f(0.0));
      CHECK(worst < 1e-12);
    }
}

TEST_CASE("half-maximum width shrinks with absorber order") {
  for (double r : {0.15, 0.9}) {
    double prev = 10.0;
    for (int p = 2; p <= 6; ++p) {
      const double w = half_max_width([p, r](double phi) { return rate_below(p, r, phi); });
      CAPTURE(r);
      CAPTURE(p);
      CHECK(w < prev);
      prev = w;
    }
  }
  // r = 0.9, p = 2 never falls to half maximum (visibility < 1/3)
  CHECK(half_max_width([](double phi) { return rate_below(2, 0.9, phi); }) == doctest::Approx(kPi));
  // two-photon fringe at r = 0.15: cos^2 + 2r^2 = (1 + 2r^2)/2
  const double r2 = 0.15 * 0.15;
  const double expected = 2.0 * std::acos(std::sqrt(0.5 * (1.0 + 2.0 * r2) - 2.0 * r2));
  CHECK(half_max_width([](double phi) { return rate_below(2, 0.15, phi); }) == doctest::Approx(expected).epsilon(1e-6));
}
