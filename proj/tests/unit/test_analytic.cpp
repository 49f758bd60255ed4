#include <doctest.h>

#include <cmath>
#include <initializer_list>
#include <numbers>
#include <string>
#include <vector>

#include "ndpo/analytic.hpp"
#include "ndpo/diagnostics.hpp"
#include "ndpo/error.hpp"
#include "ndpo/fringe.hpp"
#include "oracle_values.hpp"

using namespace ndpo;
constexpr double kPi = std::numbers::pi;

TEST_CASE("below-threshold rates against the symbolic oracle") {
  CHECK(rate_below(2, 0.5, 0.0) == doctest::Approx(oracle::kRateP2Half0).epsilon(1e-14));
  CHECK(rate_below(2, 0.5, kPi / 2) == doctest::Approx(oracle::kRateP2HalfQuarter).epsilon(1e-14));
  CHECK(rate_below(3, 0.5, kPi / 3) == doctest::Approx(oracle::kRateP3HalfSixth).epsilon(1e-14));
  CHECK(rate_below(4, 0.5, 0.0) == doctest::Approx(oracle::kRateP4Half0).epsilon(1e-14));
  CHECK(rate_below(4, 0.9, kPi / 2) == doctest::Approx(oracle::kRateP4NineTenthsQuarter).epsilon(1e-13));
  CHECK(rate_below(6, 0.15, kPi / 5) == doctest::Approx(oracle::kRateP6r015PiFifth).epsilon(1e-13));
}

TEST_CASE("one-photon rate is flat in phi") {
  for (double r : {0.15, 0.5, 0.9}) {
    const double expected = r * r / (1.0 - r * r);
    for (int i = 0; i < 16; ++i) CHECK(rate_below(1, r, 0.3 * i) == doctest::Approx(expected).epsilon(1e-14));
  }
}

TEST_CASE("closed form equals the tabulated rows") {
  for (int p = 1; p <= 6; ++p)
    for (double r : {0.15, 0.5, 0.9})
      for (int i = 0; i < 25; ++i) {
        const double phi = 2.0 * kPi * i / 25.0;
        CHECK(rate_below(p, r, phi) == doctest::Approx(table1_rate(p, r, phi)).epsilon(1e-12));
      }
}

TEST_CASE("Table I strings") {
  const std::string row2(table1_expression(2));
  CHECK(row2.find("cos^2(phi)") != std::string::npos);
  CHECK(row2.find("2r^2") != std::string::npos);
  CHECK_THROWS_AS(table1_expression(7), DomainError);
}

TEST_CASE("visibility formulas match the located extrema") {
  const auto grid = phase_grid(181);
  for (int p = 2; p <= 6; ++p)
    for (double r : {0.05, 0.3, 0.5, 0.8, 0.95}) {
      const double located = visibility([p, r](double phi) { return rate_below(p, r, phi); }, grid);
      CHECK(table2_visibility(p, r) == doctest::Approx(located).epsilon(1e-9));
    }
  CHECK(table2_visibility(1, 0.7) == 0.0);
  CHECK(table2_visibility(2, 0.5) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("visibility limits approached just below threshold") {
  const std::vector<double> exact{0.0, 0.2, 3.0 / 7.0, 27.0 / 43.0, 55.0 / 71.0, 215.0 / 247.0};
  for (int p = 2; p <= 6; ++p) {
    CHECK(visibility_below_closed_form(p, 0.999).value == doctest::Approx(kTable2Limits[p - 1]).epsilon(0.01 / kTable2Limits[p - 1]));
    // analytic limit r -> 1
    CHECK(table2_visibility(p, 1.0 - 1e-9) == doctest::Approx(exact[p - 1]).epsilon(1e-8));
    CHECK(std::abs(exact[p - 1] - kTable2Limits[p - 1]) < 0.005);
  }
}

TEST_CASE("visibility beyond the table falls back to a located fringe") {
  const auto v = visibility_below_closed_form(7, 0.5);
  CHECK(v.fallback);
  CHECK(v.value > table2_visibility(6, 0.5));
  CHECK_FALSE(visibility_below_closed_form(6, 0.5).fallback);
}

TEST_CASE("below-threshold domain") {
  CHECK_THROWS_AS(rate_below(2, 1.0, 0.0), DomainError);
  CHECK_THROWS_AS(rate_below(2, 1.5, 0.0), DomainError);
  CHECK_THROWS_AS(rate_below(2, 1.0 - 1e-7, 0.0), DomainError);
  CHECK_THROWS_AS(rate_below(0, 0.5, 0.0), DomainError);
  CHECK_THROWS_AS(rate_below(2, -0.1, 0.0), ParameterError);
  CHECK(rate_below(3, 0.0, 1.0) == 0.0);
}

TEST_CASE("above-threshold asymptotic fringe") {
  // p = 2 pattern (16 + 8 cos^2 phi)/24, visibility 0.2
  for (int i = 0; i < 12; ++i) {
    const double phi = 0.27 * i;
    const double c = std::cos(phi);
    CHECK(above_threshold_shape(2, phi) == doctest::Approx(16.0 + 8.0 * c * c).epsilon(1e-14));
  }
  const auto grid = phase_grid(181);
  CHECK(visibility([](double phi) { return above_threshold_shape(2, phi); }, grid) ==
        doctest::Approx(0.2).epsilon(1e-12));
  const auto d = derive_scaled(1e6, 1.5);
  CHECK(rate_above_asymptotic(2, d, 0.3) ==
        doctest::Approx(std::exp(log_above_threshold_prefactor(2, d)) * above_threshold_shape(2, 0.3)).epsilon(1e-13));
  CHECK(log_rate_above_asymptotic(3, d, 0.3) == doctest::Approx(std::log(rate_above_asymptotic(3, d, 0.3))).epsilon(1e-13));
  CHECK_THROWS_AS(rate_above_asymptotic(2, derive_scaled(1e6, 1.001), 0.0), DomainError);
  CHECK_THROWS_AS(rate_above_asymptotic(2, derive_scaled(1e6, 0.5), 0.0), DomainError);
}

TEST_CASE("above-threshold normalized pattern does not depend on the pump") {
  const auto a = derive_scaled(1e6, 1.2);
  const auto b = derive_scaled(1e8, 4.0);
  for (int p = 1; p <= 6; ++p)
    for (int i = 0; i < 30; ++i) {
      const double phi = 0.21 * i;
      CHECK(rate_above_asymptotic(p, a, phi) / rate_above_asymptotic(p, a, 0.0) ==
            doctest::Approx(rate_above_asymptotic(p, b, phi) / rate_above_asymptotic(p, b, 0.0)).epsilon(1e-12));
    }
}

TEST_CASE("log rates survive very large pumps") {
  const auto d = derive_scaled(1e8, 3.0);
  const double lr = log_rate_above_asymptotic(6, d, 0.0);
  CHECK(std::isfinite(lr));
  CHECK(lr > 100.0);
}

TEST_CASE("near-threshold warning is emitted once") {
  std::vector<std::string> messages;
  auto prev = set_warning_handler([&](std::string_view m) { messages.emplace_back(m); });
  rate_below(2, 0.995, 0.0);
  rate_below(2, 0.996, 0.0);
  set_warning_handler(prev);
  CHECK(messages.size() <= 1);
}
