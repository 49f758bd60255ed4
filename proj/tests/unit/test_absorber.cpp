#include <doctest.h>

#include <array>
#include <cmath>
#include <initializer_list>
#include <complex>
#include <random>

#include "ndpo/absorber.hpp"
#include "ndpo/error.hpp"

using namespace ndpo;

TEST_CASE("single factor expands to F(u1,u4) - F(u2,u3)") {
  const auto poly = expand_absorber_power(1);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> U(-2.0, 2.0);
  for (int trial = 0; trial < 50; ++trial) {
    const std::array<double, 4> u{U(rng), U(rng), U(rng), U(rng)};
    const double phi = U(rng) * 3.0;
    const double C = std::cos(phi / 2), S = std::sin(phi / 2);
    using namespace std::complex_literals;
    const std::complex<double> f14 = std::pow(u[0] * C - 1i * (u[3] * S), 2);
    const std::complex<double> f23 = std::pow(u[1] * C - 1i * (u[2] * S), 2);
    const auto direct = absorber_factor(u, phi);
    CHECK(std::abs(direct - (f14 - f23)) < 1e-12);
    CHECK(std::abs(poly.evaluate(u, phi) - direct) < 1e-12);
  }
}

TEST_CASE("expansion reproduces the p-th power pointwise") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> U(-1.5, 1.5);
  for (int p = 1; p <= 6; ++p) {
    const auto poly = expand_absorber_power(p);
    CHECK(poly.order() == p);
    for (int trial = 0; trial < 10; ++trial) {
      const std::array<double, 4> u{U(rng), U(rng), U(rng), U(rng)};
      const double phi = U(rng) * 2.0;
      const auto expected = std::pow(absorber_factor(u, phi), p);
      CHECK(std::abs(poly.evaluate(u, phi) - expected) <= 1e-11 * std::max(1.0, std::abs(expected)));
    }
  }
}

TEST_CASE("surviving terms are even with real coefficients") {
  for (int p = 1; p <= 8; ++p) {
    const auto poly = expand_absorber_power(p);
    std::size_t even = 0;
    for (const auto& term : poly.terms()) {
      int total = 0;
      for (int e : term.exponents) total += e;
      CHECK(total == 2 * p);
      if (term.vanishes_on_contraction()) continue;
      ++even;
      CHECK(term.key().order() == p);
      for (const auto& tm : term.coefficient) {
        CHECK(tm.coefficient.im.numerator() == 0);
        CHECK((tm.cos_power + tm.sin_power) == 2 * p);
      }
    }
    CHECK(even == poly.contributing_terms());
    CHECK(even > 0);
  }
}

TEST_CASE("p = 1 contributing terms") {
  // (u1^2 - u2^2) C^2 + (u3^2 - u4^2) S^2
  const auto poly = expand_absorber_power(1);
  CHECK(poly.contributing_terms() == 4);
  for (const auto& term : poly.terms()) {
    if (term.vanishes_on_contraction()) continue;
    REQUIRE(term.coefficient.size() == 1);
    const auto& tm = term.coefficient.front();
    const auto k = term.key();
    const int sign = (k.s == 1 || k.t == 1) ? 1 : -1;
    CHECK(tm.coefficient.re == Rational(sign));
    CHECK(tm.cos_power == ((k.s == 1 || k.m == 1) ? 2 : 0));
  }
}

TEST_CASE("order limit and cache") {
  CHECK_THROWS_AS(expand_absorber_power(kMaxAbsorberOrder + 1), ResourceError);
  CHECK_THROWS_AS(expand_absorber_power(0), DomainError);
  const auto a = cached_absorber_power(3);
  const auto b = cached_absorber_power(3);
  CHECK(a.get() == b.get());
  CHECK(expand_absorber_power(kMaxAbsorberOrder).order() == kMaxAbsorberOrder);
}
