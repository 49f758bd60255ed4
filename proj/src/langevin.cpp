#include "ndpo/langevin.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <numbers>
#include <ostream>
#include <sstream>
#include <thread>

#include "ndpo/error.hpp"
#include "ndpo/philox.hpp"

namespace ndpo {
namespace {

constexpr double kMaxDt = 0.01;
constexpr double kInvSqrt2 = 1.0 / std::numbers::sqrt2;
constexpr double kMinBurnIn = 10.0;
constexpr double kMinSampleInterval = 1.0;

int steps_for(double duration, double dt) { return static_cast<int>(std::llround(duration / dt)); }

TrajectoryState initial_state(const DerivedParams& d, InitialCondition ic, NormalStream& stream) {
  if (ic == InitialCondition::Auto) ic = d.r > 1.0 ? InitialCondition::FixedPoint : InitialCondition::Vacuum;
  TrajectoryState s;
  if (ic == InitialCondition::Vacuum) return s;
  if (d.r <= 1.0) throw ParameterError("fixed-point initial condition requires r > 1");
  const double amplitude = std::sqrt(0.5 * d.n0 * (d.r - 1.0));
  const cplx phase = std::polar(1.0, 2.0 * std::numbers::pi * stream.next_uniform());
  s.alpha1 = amplitude * phase;
  s.alpha2 = amplitude * std::conj(phase);
  s.alpha1_star = amplitude * std::conj(phase);
  s.alpha2_star = amplitude * phase;
  return s;
}

// Samples of one trajectory, restarting on a fresh stream after divergence.
// Returns the number of restarts; throws once the shared budget is exhausted.
std::size_t run_trajectory(const DerivedParams& d, const SimConfig& cfg, double cap, std::uint32_t index,
                           TrajectoryState* out, std::atomic<std::size_t>& discarded, std::size_t budget) {
  const int burn_steps = steps_for(cfg.burn_in, cfg.dt);
  const int gap_steps = steps_for(cfg.sample_interval, cfg.dt);
  const double sqrt_dt = std::sqrt(cfg.dt) * cfg.noise_scale;
  std::size_t restarts = 0;
  for (std::uint32_t generation = 0;; ++generation) {
    NormalStream stream(cfg.seed, index, generation);
    TrajectoryState s = initial_state(d, cfg.initial, stream);
    bool diverged = false;
    auto advance = [&](int n) {
      for (int i = 0; i < n; ++i) {
        auto dw = stream.next4();
        for (double& w : dw) w *= sqrt_dt;
        s = step(s, d, cfg.dt, dw);
        if (!(s.max_magnitude() <= cap)) {
          diverged = true;
          return;
        }
      }
    };
    advance(burn_steps);
    for (int k = 0; k < cfg.samples_per_trajectory && !diverged; ++k) {
      advance(gap_steps);
      out[k] = s;
    }
    if (!diverged) return restarts;
    ++restarts;
    if (discarded.fetch_add(1) + 1 > budget) {
      std::ostringstream msg;
      msg << "more than " << budget << " divergent trajectories (cap " << cap << ")";
      throw StatisticsError(msg.str());
    }
  }
}

}  // namespace

double TrajectoryState::max_magnitude() const {
  return std::max({std::abs(alpha1), std::abs(alpha2), std::abs(alpha1_star), std::abs(alpha2_star)});
}

void SimConfig::validate() const {
  auto fail = [](const std::string& what) { throw ParameterError("simulation config: " + what); };
  if (!(dt > 0.0 && dt <= kMaxDt)) fail("dt must lie in (0, 0.01]");
  if (!(burn_in >= kMinBurnIn)) fail("burn_in must be >= 10 lifetimes");
  if (!(sample_interval >= kMinSampleInterval)) fail("sample_interval must be >= 1 lifetime");
  if (samples_per_trajectory < 1) fail("samples_per_trajectory must be >= 1");
  if (n_trajectories < 1) fail("n_trajectories must be >= 1");
  if (!(divergence_cap >= 0.0)) fail("divergence_cap must be >= 0");
  if (!(noise_scale >= 0.0)) fail("noise_scale must be >= 0");
  if (!(max_discard_fraction >= 0.0 && max_discard_fraction <= 1.0)) fail("max_discard_fraction must lie in [0, 1]");
}

double default_divergence_cap(const DerivedParams& d) { return 1e3 * std::sqrt(d.n0 * std::max(d.r - 1.0, 1.0)); }

TrajectoryState step(const TrajectoryState& s, const DerivedParams& d, double dt, const std::array<double, 4>& dw) {
  const double inv_n0 = 1.0 / d.n0;
  const cplx gain = d.r - 2.0 * s.alpha1 * s.alpha2 * inv_n0;
  const cplx gain_star = d.r - 2.0 * s.alpha1_star * s.alpha2_star * inv_n0;
  const cplx g = std::sqrt(gain) * kInvSqrt2;
  const cplx g_star = std::sqrt(gain_star) * kInvSqrt2;
  const cplx n12p(dw[0], dw[1]);
  const cplx n12m(dw[0], -dw[1]);
  const cplx n34m(dw[2], -dw[3]);
  const cplx n34p(dw[2], dw[3]);
  TrajectoryState next;
  next.alpha1 = s.alpha1 + (-s.alpha1 + gain * s.alpha2_star) * dt + g * n12p;
  next.alpha2 = s.alpha2 + (-s.alpha2 + gain * s.alpha1_star) * dt + g * n12m;
  next.alpha1_star = s.alpha1_star + (-s.alpha1_star + gain_star * s.alpha2) * dt + g_star * n34m;
  next.alpha2_star = s.alpha2_star + (-s.alpha2_star + gain_star * s.alpha1) * dt + g_star * n34p;
  next.tau = s.tau + dt;
  return next;
}

TrajectoryState evolve_deterministic(TrajectoryState state, const DerivedParams& d, double dt, double duration) {
  const int n = steps_for(duration, dt);
  for (int i = 0; i < n; ++i) state = step(state, d, dt, {0.0, 0.0, 0.0, 0.0});
  return state;
}

SampleSet simulate_steady_state(const DerivedParams& d, const SimConfig& cfg) {
  cfg.validate();
  SampleSet set;
  set.n_trajectories = cfg.n_trajectories;
  set.samples_per_trajectory = cfg.samples_per_trajectory;
  set.states.resize(static_cast<std::size_t>(cfg.n_trajectories) * cfg.samples_per_trajectory);
  const double cap = cfg.divergence_cap > 0.0 ? cfg.divergence_cap : default_divergence_cap(d);
  const auto budget = static_cast<std::size_t>(std::floor(cfg.max_discard_fraction * cfg.n_trajectories));

  std::atomic<std::size_t> discarded{0};
  std::atomic<int> next{0};
  std::mutex error_mutex;
  std::exception_ptr error;
  constexpr int kChunk = 16;

  auto worker = [&] {
    try {
      for (;;) {
        const int begin = next.fetch_add(kChunk);
        if (begin >= cfg.n_trajectories) return;
        const int end = std::min(begin + kChunk, cfg.n_trajectories);
        for (int i = begin; i < end; ++i) {
          run_trajectory(d, cfg, cap, static_cast<std::uint32_t>(i),
                         &set.states[static_cast<std::size_t>(i) * cfg.samples_per_trajectory], discarded, budget);
        }
      }
    } catch (...) {
      std::lock_guard lock(error_mutex);
      if (!error) error = std::current_exception();
      next.store(cfg.n_trajectories);
    }
  };

  unsigned n_threads = cfg.threads != 0 ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  n_threads = std::min<unsigned>(n_threads, static_cast<unsigned>((cfg.n_trajectories + kChunk - 1) / kChunk));
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(n_threads);
    for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
  }
  if (error) std::rethrow_exception(error);
  set.discarded = discarded.load();
  return set;
}

AbsorberField propagate_to_absorber(const TrajectoryState& s, double phi) {
  using namespace std::complex_literals;
  constexpr double k = kInvSqrt2;
  const cplx beta1 = (-s.alpha1 + 1i * s.alpha2) * k;
  const cplx beta2 = (-s.alpha2 + 1i * s.alpha1) * k;
  const cplx beta1_star = (-s.alpha1_star - 1i * s.alpha2_star) * k;
  const cplx beta2_star = (-s.alpha2_star - 1i * s.alpha1_star) * k;
  const cplx phase = std::polar(1.0, phi);
  return {beta1 * phase + beta2, beta1_star * std::conj(phase) + beta2_star};
}

EnsembleEstimate estimate_observable(const SampleSet& samples,
                                     const std::function<cplx(const TrajectoryState&)>& f) {
  if (samples.n_trajectories < 1 || samples.samples_per_trajectory < 1 || samples.states.empty()) {
    throw DomainError("ensemble estimate needs at least one sample");
  }
  const int n = samples.n_trajectories;
  const int m = samples.samples_per_trajectory;
  std::vector<cplx> means(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    cplx acc = 0.0;
    for (int k = 0; k < m; ++k) acc += f(samples.at(i, k));
    means[i] = acc / static_cast<double>(m);
  }
  cplx total = 0.0;
  for (const auto& v : means) total += v;
  const cplx mean = total / static_cast<double>(n);
  double var_re = 0.0;
  double var_im = 0.0;
  for (const auto& v : means) {
    var_re += std::norm(v.real() - mean.real());
    var_im += std::norm(v.imag() - mean.imag());
  }
  EnsembleEstimate e;
  e.mean = mean.real();
  e.imag_mean = mean.imag();
  if (n > 1) {
    e.std_error = std::sqrt(var_re / (n - 1) / n);
    e.imag_std_error = std::sqrt(var_im / (n - 1) / n);
  }
  e.n_samples = static_cast<std::size_t>(n) * m;
  e.discarded = samples.discarded;
  e.imag_consistent = std::abs(e.imag_mean) <= 3.0 * e.imag_std_error;
  return e;
}

EnsembleEstimate estimate_rate(int p, double phi, const SampleSet& samples) {
  if (p < 1) throw DomainError("absorber order p must be >= 1");
  return estimate_observable(samples, [p, phi](const TrajectoryState& s) {
    const AbsorberField a = propagate_to_absorber(s, phi);
    cplx prod = 1.0;
    for (int i = 0; i < p; ++i) prod *= a.field * a.field_star;
    return prod;
  });
}

void write_samples_csv(std::ostream& out, const SampleSet& samples) {
  out << "trajectory,tau,re_alpha1,im_alpha1,re_alpha2,im_alpha2,re_alpha1_star,im_alpha1_star,re_alpha2_star,"
         "im_alpha2_star\n";
  char buf[64];
  auto put = [&](double v) {
    std::snprintf(buf, sizeof buf, ",%.17g", v);
    out << buf;
  };
  for (int i = 0; i < samples.n_trajectories; ++i) {
    for (int k = 0; k < samples.samples_per_trajectory; ++k) {
      const auto& s = samples.at(i, k);
      out << i;
      put(s.tau);
      for (const cplx& a : {s.alpha1, s.alpha2, s.alpha1_star, s.alpha2_star}) {
        put(a.real());
        put(a.imag());
      }
      out << '\n';
    }
  }
}

}  // namespace ndpo
