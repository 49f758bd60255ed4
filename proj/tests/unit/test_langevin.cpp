#include <doctest.h>

#include <cmath>
#include <initializer_list>
#include <complex>
#include <numbers>
#include <sstream>

#include "ndpo/error.hpp"
#include "ndpo/langevin.hpp"
#include "ndpo/philox.hpp"

using namespace ndpo;
using namespace std::complex_literals;
constexpr double kPi = std::numbers::pi;

TEST_CASE("Philox4x32-10 known-answer vectors") {
  CHECK(philox4x32({0, 0, 0, 0}, {0, 0}) == PhiloxCounter{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
  CHECK(philox4x32({~0u, ~0u, ~0u, ~0u}, {~0u, ~0u}) == PhiloxCounter{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
  CHECK(philox4x32({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}) ==
        PhiloxCounter{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("normal streams") {
  NormalStream a(5, 3, 0), b(5, 3, 0), c(5, 4, 0);
  const auto x = a.next4();
  CHECK(x == b.next4());
  CHECK(x != c.next4());
  NormalStream s(1, 0, 0);
  double m1 = 0, m2 = 0;
  const int n = 50000;
  for (int i = 0; i < n; ++i)
    for (double v : s.next4()) {
      m1 += v;
      m2 += v * v;
    }
  m1 /= 4.0 * n;
  m2 /= 4.0 * n;
  CHECK(std::abs(m1) < 4.0 / std::sqrt(4.0 * n));
  CHECK(std::abs(m2 - 1.0) < 4.0 * std::sqrt(2.0 / (4.0 * n)));
}

TEST_CASE("vacuum is a fixed point of the drift below threshold") {
  const auto d = derive_scaled(1e6, 0.5);
  const auto s = evolve_deterministic(TrajectoryState{}, d, 1e-3, 5.0);
  CHECK(s.max_magnitude() == 0.0);
}

TEST_CASE("deterministic limit above threshold") {
  for (double r : {2.0, 1.5}) {
    const auto d = derive_scaled(1e4, r);
    TrajectoryState s;
    s.alpha1 = s.alpha2 = s.alpha1_star = s.alpha2_star = 3.0;
    s = evolve_deterministic(s, d, 1e-3, 100.0);
    const double target = d.n0 * (r - 1.0) / 2.0;
    CHECK(std::abs((s.alpha1 * s.alpha2).real() / target - 1.0) < 1e-8);
    CHECK(std::abs((s.alpha1 * s.alpha1_star).real() / target - 1.0) < 1e-8);
  }
}

TEST_CASE("single step from the origin") {
  // noise amplitude sqrt(r): each quadrature of alpha1 gets variance r dt / 2
  const auto d = derive_scaled(1e6, 0.5);
  const double dt = 1e-3;
  NormalStream stream(9, 0, 0);
  double mean = 0.0, var_re = 0.0, var_im = 0.0;
  const int n = 40000;
  for (int i = 0; i < n; ++i) {
    auto dw = stream.next4();
    for (double& w : dw) w *= std::sqrt(dt);
    const auto s = step(TrajectoryState{}, d, dt, dw);
    mean += s.alpha1.real();
    var_re += s.alpha1.real() * s.alpha1.real();
    var_im += s.alpha1.imag() * s.alpha1.imag();
    CHECK(s.alpha2 == std::conj(s.alpha1));
  }
  const double expected = d.r * dt / 2.0;
  CHECK(std::abs(mean / n) < 4.0 * std::sqrt(expected / n));
  CHECK(var_re / n == doctest::Approx(expected).epsilon(0.03));
  CHECK(var_im / n == doctest::Approx(expected).epsilon(0.03));
}

TEST_CASE("beam-splitter propagation") {
  TrajectoryState s;
  s.alpha1 = 1.0;
  const auto f = propagate_to_absorber(s, 0.0);
  CHECK(std::abs(f.field - (-1.0 + 1i) / std::sqrt(2.0)) < 1e-15);

  // compare with the explicit linear map at several phases
  s.alpha1 = 0.3 - 0.2i;
  s.alpha2 = -0.1 + 0.7i;
  s.alpha1_star = 0.5 + 0.1i;
  s.alpha2_star = 0.2 - 0.4i;
  for (double phi : {0.0, 0.5, 2.0}) {
    const std::complex<double> e = std::polar(1.0, phi);
    const double k = 1.0 / std::sqrt(2.0);
    const std::complex<double> m11 = -k * e + 1i * k, m12 = 1i * k * e - k;
    const std::complex<double> n11 = -k / e - 1i * k, n12 = -1i * k / e - k;
    const auto got = propagate_to_absorber(s, phi);
    CHECK(std::abs(got.field - (m11 * s.alpha1 + m12 * s.alpha2)) < 1e-15);
    CHECK(std::abs(got.field_star - (n11 * s.alpha1_star + n12 * s.alpha2_star)) < 1e-15);
  }
}

TEST_CASE("configuration limits") {
  SimConfig c;
  CHECK_NOTHROW(c.validate());
  c.dt = 0.02;
  CHECK_THROWS_AS(c.validate(), ParameterError);
  c = SimConfig{};
  c.burn_in = 5.0;
  CHECK_THROWS_AS(c.validate(), ParameterError);
  c = SimConfig{};
  c.sample_interval = 0.5;
  CHECK_THROWS_AS(c.validate(), ParameterError);
  CHECK(default_divergence_cap(derive_scaled(1e6, 0.5)) == doctest::Approx(1e6));
  CHECK(default_divergence_cap(derive_scaled(1e4, 3.0)) == doctest::Approx(1e3 * std::sqrt(2e4)));
}

namespace {

SimConfig small_config(std::uint64_t seed) {
  SimConfig c;
  c.dt = 5e-3;
  c.n_trajectories = 64;
  c.samples_per_trajectory = 4;
  c.seed = seed;
  c.threads = 1;
  return c;
}

}  // namespace

TEST_CASE("sample sets are reproducible and schedule independent") {
  const auto d = derive_scaled(1e6, 0.5);
  auto c = small_config(42);
  const auto a = simulate_steady_state(d, c);
  const auto b = simulate_steady_state(d, c);
  c.threads = 3;
  const auto t = simulate_steady_state(d, c);
  REQUIRE(a.states.size() == 64u * 4u);
  bool same = true, same_threads = true;
  for (std::size_t i = 0; i < a.states.size(); ++i) {
    same = same && a.states[i].alpha1 == b.states[i].alpha1 && a.states[i].alpha2_star == b.states[i].alpha2_star;
    same_threads = same_threads && a.states[i].alpha1 == t.states[i].alpha1;
  }
  CHECK(same);
  CHECK(same_threads);
  const auto other = simulate_steady_state(d, small_config(43));
  CHECK(other.states[0].alpha1 != a.states[0].alpha1);
}

TEST_CASE("zero pump gives zero moments") {
  const auto samples = simulate_steady_state(derive_scaled(1e6, 0.0), small_config(1));
  const auto e = estimate_rate(1, 0.3, samples);
  CHECK(e.mean == 0.0);
  CHECK(e.std_error == 0.0);
}

TEST_CASE("divergent ensembles are reported") {
  auto c = small_config(2);
  c.divergence_cap = 1e-3;
  CHECK_THROWS_AS(simulate_steady_state(derive_scaled(1e6, 0.5), c), StatisticsError);
  CHECK_THROWS_AS(estimate_rate(1, 0.0, SampleSet{}), DomainError);
}

TEST_CASE("one-photon rate and odd moments at r = 0.5") {
  const auto d = derive_scaled(1e6, 0.5);
  SimConfig c;
  c.dt = 2e-3;
  c.n_trajectories = 800;
  c.seed = 17;
  const auto samples = simulate_steady_state(d, c);
  CHECK(samples.discarded == 0);
  for (double phi : {0.0, 1.0, 2.0}) {
    const auto e = estimate_rate(1, phi, samples);
    CHECK(std::abs(e.mean - 1.0 / 3.0) < 3.0 * e.std_error);
    CHECK(e.imag_consistent);
  }
  const auto odd = estimate_observable(samples, [](const TrajectoryState& s) { return s.alpha1 + s.alpha2_star; });
  CHECK(std::abs(odd.mean) < 3.0 * odd.std_error);
  const auto cubic = estimate_observable(samples, [](const TrajectoryState& s) {
    return s.alpha1 * s.alpha1_star * s.alpha2_star;
  });
  CHECK(std::abs(cubic.mean) < 3.0 * cubic.std_error);
  // pi-periodicity at paired phases
  for (int i = 0; i < 8; ++i) {
    const double phi = 0.35 * i;
    const auto a = estimate_rate(2, phi, samples);
    const auto b = estimate_rate(2, phi + kPi, samples);
    CHECK(std::abs(a.mean - b.mean) < 3.0 * std::hypot(a.std_error, b.std_error) + 1e-12);
  }
}

TEST_CASE("sample dump layout") {
  const auto samples = simulate_steady_state(derive_scaled(1e6, 0.5), small_config(3));
  std::ostringstream out;
  write_samples_csv(out, samples);
  const std::string text = out.str();
  CHECK(text.rfind("trajectory,tau,re_alpha1,im_alpha1,re_alpha2,im_alpha2,re_alpha1_star,im_alpha1_star,"
                   "re_alpha2_star,im_alpha2_star\n",
                   0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 1 + 64 * 4);
}
