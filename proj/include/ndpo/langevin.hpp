#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <vector>

#include "ndpo/params.hpp"

namespace ndpo {

using cplx = std::complex<double>;

// Positive-P amplitudes. The starred components are independent variables,
// not complex conjugates of the unstarred ones.
struct TrajectoryState {
  cplx alpha1{};
  cplx alpha2{};
  cplx alpha1_star{};
  cplx alpha2_star{};
  double tau = 0.0;  // cavity lifetimes

  double max_magnitude() const;
};

enum class InitialCondition {
  Auto,        // FixedPoint above threshold, Vacuum otherwise
  Vacuum,
  FixedPoint,  // |alpha|^2 = n0 (r - 1) / 2 with a uniformly random phase
};

struct SimConfig {
  double dt = 1e-3;
  double burn_in = 10.0;
  double sample_interval = 1.0;
  int samples_per_trajectory = 10;
  int n_trajectories = 1000;
  std::uint64_t seed = 0;
  double divergence_cap = 0.0;  // 0 selects 1e3 sqrt(n0 max(r - 1, 1))
  double noise_scale = 1.0;
  unsigned threads = 0;  // 0 selects hardware concurrency
  double max_discard_fraction = 0.1;
  InitialCondition initial = InitialCondition::Auto;

  // Throws ParameterError on dt outside (0, 0.01], burn_in < 10,
  // sample_interval < 1 or non-positive counts.
  void validate() const;
};

double default_divergence_cap(const DerivedParams& derived);

// One Euler-Maruyama step. dw holds four independent N(0, dt) increments;
// (dw0, dw1) drive the unstarred pair and (dw2, dw3) the starred pair.
TrajectoryState step(const TrajectoryState& state, const DerivedParams& derived, double dt,
                     const std::array<double, 4>& dw);

// Noise-free evolution for the given duration.
TrajectoryState evolve_deterministic(TrajectoryState state, const DerivedParams& derived, double dt, double duration);

struct SampleSet {
  int n_trajectories = 0;
  int samples_per_trajectory = 0;
  std::vector<TrajectoryState> states;  // trajectory-major
  std::size_t discarded = 0;

  const TrajectoryState& at(int trajectory, int sample) const {
    return states[static_cast<std::size_t>(trajectory) * samples_per_trajectory + sample];
  }
};

// Throws StatisticsError when discards exceed max_discard_fraction of
// n_trajectories. Output is independent of the thread count.
SampleSet simulate_steady_state(const DerivedParams& derived, const SimConfig& config);

struct AbsorberField {
  cplx field;
  cplx field_star;
};

AbsorberField propagate_to_absorber(const TrajectoryState& state, double phi);

struct EnsembleEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t n_samples = 0;
  std::size_t discarded = 0;
  double imag_mean = 0.0;
  double imag_std_error = 0.0;
  bool imag_consistent = true;  // |imag_mean| <= 3 imag_std_error
};

// Mean of field^p field_star^p. Errors come from the spread of per-trajectory
// means, since samples within a trajectory are correlated.
EnsembleEstimate estimate_rate(int p, double phi, const SampleSet& samples);

// Generic per-sample observable with the same batching.
EnsembleEstimate estimate_observable(const SampleSet& samples, const std::function<cplx(const TrajectoryState&)>& f);

void write_samples_csv(std::ostream& out, const SampleSet& samples);

}  // namespace ndpo
