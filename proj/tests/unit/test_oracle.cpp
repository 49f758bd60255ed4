#include <doctest.h>

#include <cmath>
#include <initializer_list>
#include <numbers>

#include "ndpo/analytic.hpp"
#include "ndpo/error.hpp"
#include "ndpo/fringe.hpp"
#include "ndpo/moments.hpp"
#include "ndpo/oracle.hpp"

using namespace ndpo;
constexpr double kPi = std::numbers::pi;

TEST_CASE("radial quadrature closed forms") {
  CHECK(quad_radial(1, 0.0) == doctest::Approx(std::sqrt(kPi / 8.0)).epsilon(1e-12));
  CHECK(quad_radial(3, 0.0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(default_radial_cut(-5.0) == doctest::Approx(std::sqrt(12.0) + 12.0));
  CHECK_THROWS_AS(quad_radial(4, 0.0), DomainError);
}

TEST_CASE("radial quadrature vs recursion") {
  CHECK(quad_radial(5, 42.0) == doctest::Approx(radial_R(5, 42.0)).epsilon(1e-8));
  for (double a1 : {-20.0, -5.0, -1.0, 0.0, 1.0, 5.0, 42.0})
    for (int S = 1; S <= 13; S += 2) {
      CAPTURE(a1);
      CAPTURE(S);
      CHECK(std::abs(std::expm1(quad_log_radial(S, a1) - log_radial_R(S, a1))) < 1e-8);
    }
  // deep below threshold R underflows; the log forms still agree
  CHECK(std::abs(quad_log_radial(9, -60.0) - log_radial_R(9, -60.0)) < 1e-8);
}

TEST_CASE("full-distribution moments") {
  const auto below = derive_scaled(1e6, 0.5);
  CHECK(quad_moment_full(0, 0, 0, 0, below) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(quad_moment_full(1, 0, 0, 0, below) == doctest::Approx(gaussian_even_moment(1, below.a1)).epsilon(1e-4));
  CHECK(quad_moment_full(0, 0, 1, 0, below) == doctest::Approx(gaussian_even_moment(1, below.a2)).epsilon(1e-4));
  const auto at = derive_scaled(1e6, 1.0);
  CHECK(quad_moment_full(1, 1, 0, 0, at) == doctest::Approx(coupled_moment(1, 1, 0.0)).epsilon(1e-3));
  CHECK(quad_moment_full(1, 0, 0, 0, at) == doctest::Approx(coupled_moment(1, 0, 0.0)).epsilon(1e-3));
  CHECK_THROWS_AS(FullMomentTable(at, 7), DomainError);
}

TEST_CASE("quadrature rate vs closed form below threshold") {
  const auto d = derive_scaled(1e6, 0.5);
  for (double phi : {0.0, kPi / 4, kPi / 2}) {
    CHECK(rate_quadrature(2, d, phi) == doctest::Approx(rate_below(2, 0.5, phi)).epsilon(1e-3));
  }
  CHECK_THROWS_AS(rate_quadrature(5, d, 0.0), DomainError);
}

TEST_CASE("quadrature p = 1 fringe is flat") {
  for (double r : {0.5, 1.0, 1.03}) {
    const QuadratureEngine engine(1, derive_scaled(1e6, r));
    double hi = -1e300, lo = 1e300;
    for (int i = 0; i < 36; ++i) {
      hi = std::max(hi, engine.shape(kPi * i / 18));
      lo = std::min(lo, engine.shape(kPi * i / 18));
    }
    CHECK((hi - lo) / hi < 1e-6);
  }
}

TEST_CASE("quadrature reproduces the moment engine across the pump span") {
  // Where the coupled approximation holds the two agree closely; the
  // worst case sits at threshold.
  for (double r : {0.15, 0.5, 0.9, 0.999, 1.0, 1.01, 1.03}) {
    CAPTURE(r);
    const auto d = derive_scaled(1e6, r);
    const MomentEngine engine(2, d, Regime{RegimeTag::NearThreshold, kDefaultBand});
    const QuadratureEngine quad(2, d);
    for (double phi : {0.0, kPi / 2}) CHECK(quad.rate(phi) == doctest::Approx(engine.rate(phi)).epsilon(1e-3));
  }
}

TEST_CASE("p = 2 above-threshold visibility from the full distribution") {
  const QuadratureEngine quad(2, derive_scaled(1e6, 1.03));
  const auto grid = phase_grid(91);
  CHECK(std::abs(visibility([&quad](double phi) { return quad.shape(phi); }, grid) - 0.2) < 0.01);
}

TEST_CASE("doubling the truncation leaves results unchanged") {
  for (double r : {0.5, 1.0, 1.03}) {
    const auto d = derive_scaled(1e6, r);
    QuadratureSpec wide;
    wide.upper_cut = 2.0 * default_radial_cut(d.a1);
    const FullMomentTable base(d, 3);
    const FullMomentTable doubled(d, 3, wide);
    for (int k = 0; k <= 3; ++k)
      for (int l = 0; k + l <= 3; ++l)
        CHECK(doubled.radial_moment(k, l) == doctest::Approx(base.radial_moment(k, l)).epsilon(1e-10));
    for (int S : {1, 7, 13}) {
      CHECK(quad_radial(S, d.a1 > 0 ? d.a1 : -5.0, wide) ==
            doctest::Approx(quad_radial(S, d.a1 > 0 ? d.a1 : -5.0)).epsilon(1e-10));
    }
  }
}

TEST_CASE("quadrature schemes agree") {
  QuadratureSpec gk15;
  gk15.scheme = KronrodScheme::GK15;
  gk15.rel_tol = 1e-10;
  QuadratureSpec gk61;
  gk61.scheme = KronrodScheme::GK61;
  CHECK(quad_radial(7, 3.0, gk15) == doctest::Approx(quad_radial(7, 3.0, gk61)).epsilon(1e-9));
}
