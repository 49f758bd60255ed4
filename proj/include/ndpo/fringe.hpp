#pragma once

#include <cstddef>
#include <functional>
#include <numbers>
#include <span>
#include <vector>

#include "ndpo/params.hpp"

namespace ndpo {

inline constexpr std::size_t kDefaultPhasePoints = 721;

using RateFunction = std::function<double(double)>;

// count points on the half-open interval [lo, hi).
std::vector<double> phase_grid(std::size_t count = kDefaultPhasePoints, double lo = 0.0,
                               double hi = 2.0 * std::numbers::pi);

struct Extrema {
  double phi_max = 0.0;
  double value_max = 0.0;
  double phi_min = 0.0;
  double value_min = 0.0;
};

// Dense scan over the grid, then golden-section refinement of the best
// maximum and minimum inside their neighbouring grid cells.
Extrema locate_extrema(const RateFunction& rate, std::span<const double> grid,
                       double rel_tol = 1e-10);

// (max - min)/(max + min); throws UndefinedVisibilityError when max + min == 0.
double visibility_from_extrema(double value_max, double value_min);
double visibility(const RateFunction& rate, std::span<const double> grid);

struct FringePattern {
  std::vector<double> phi_grid;
  std::vector<double> rates;
  std::vector<double> log_rates;
  std::vector<double> normalized;  // rates / max
  double rate_max = 0.0;           // refined extrema
  double rate_min = 0.0;
  double visibility = 0.0;         // NaN when undefined (all-zero pattern)
  bool visibility_defined = false;
  int p = 1;
  RegimeTag regime_used = RegimeTag::Below;
};

// rate(phi) = exp(log_scale) * shape(phi). Large prefactors stay in
// log_scale so that log_rates and normalized never overflow.
FringePattern sample_fringe(int p, const RateFunction& shape, double log_scale,
                            std::span<const double> grid, RegimeTag regime);

double visibility(const FringePattern& pattern);

// Width of the central lobe about phi = 0 where rate >= max/2, with the
// rate normalized to its maximum. Returns the full period when the fringe
// never drops to half maximum.
double half_max_width(const RateFunction& rate, double period = std::numbers::pi);

// max over grid of |f(phi) - f(phi + shift)| / max |f|.
double shift_mismatch(const RateFunction& rate, std::span<const double> grid, double shift);

}  // namespace ndpo
