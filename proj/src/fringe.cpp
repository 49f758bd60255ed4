#include "ndpo/fringe.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ndpo/error.hpp"

namespace ndpo {
namespace {

// Golden-section search for the maximum of sign*f on [lo, hi].
std::pair<double, double> golden_max(const RateFunction& f, double lo, double hi, double sign,
                                     double rel_tol) {
  constexpr double inv_phi = 0.6180339887498949;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = sign * f(x1);
  double f2 = sign * f(x2);
  for (int it = 0; it < 200 && (hi - lo) > rel_tol * std::max(1.0, std::abs(lo) + std::abs(hi)); ++it) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = sign * f(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = sign * f(x1);
    }
  }
  const double x = 0.5 * (lo + hi);
  return {x, f(x)};
}

}  // namespace

std::vector<double> phase_grid(std::size_t count, double lo, double hi) {
  if (count == 0) throw ParameterError("phase grid needs at least one point");
  if (!(hi > lo)) throw ParameterError("phase grid needs hi > lo");
  std::vector<double> grid(count);
  const double h = (hi - lo) / static_cast<double>(count);
  for (std::size_t i = 0; i < count; ++i) grid[i] = lo + h * static_cast<double>(i);
  return grid;
}

Extrema locate_extrema(const RateFunction& rate, std::span<const double> grid, double rel_tol) {
  if (grid.empty()) throw ParameterError("empty phase grid");
  std::vector<double> values(grid.size());
  std::transform(grid.begin(), grid.end(), values.begin(), rate);
  const auto imax = static_cast<std::size_t>(std::max_element(values.begin(), values.end()) - values.begin());
  const auto imin = static_cast<std::size_t>(std::min_element(values.begin(), values.end()) - values.begin());

  Extrema e{grid[imax], values[imax], grid[imin], values[imin]};
  if (grid.size() < 2) return e;

  auto cell = [&](std::size_t i) {
    const double left = i > 0 ? grid[i] - grid[i - 1] : grid[1] - grid[0];
    const double right = i + 1 < grid.size() ? grid[i + 1] - grid[i] : grid[i] - grid[i - 1];
    return std::pair{grid[i] - left, grid[i] + right};
  };

  auto [lo_max, hi_max] = cell(imax);
  const auto [xmax, fmax] = golden_max(rate, lo_max, hi_max, 1.0, rel_tol);
  if (fmax > e.value_max) e = {xmax, fmax, e.phi_min, e.value_min};

  auto [lo_min, hi_min] = cell(imin);
  const auto [xmin, fmin] = golden_max(rate, lo_min, hi_min, -1.0, rel_tol);
  if (fmin < e.value_min) {
    e.phi_min = xmin;
    e.value_min = fmin;
  }
  return e;
}

double visibility_from_extrema(double value_max, double value_min) {
  const double sum = value_max + value_min;
  if (!(sum > 0.0)) throw UndefinedVisibilityError("visibility undefined for an all-zero fringe");
  return (value_max - value_min) / sum;
}

double visibility(const RateFunction& rate, std::span<const double> grid) {
  const Extrema e = locate_extrema(rate, grid);
  return visibility_from_extrema(e.value_max, e.value_min);
}

FringePattern sample_fringe(int p, const RateFunction& shape, double log_scale,
                            std::span<const double> grid, RegimeTag regime) {
  FringePattern out;
  out.p = p;
  out.regime_used = regime;
  out.phi_grid.assign(grid.begin(), grid.end());
  const std::size_t n = grid.size();
  std::vector<double> shape_values(n);
  for (std::size_t i = 0; i < n; ++i) shape_values[i] = shape(grid[i]);
  const double raw_max = *std::max_element(shape_values.begin(), shape_values.end());
  for (double& v : shape_values) {
    // Negative values may only be rounding noise around an exact zero.
    if (v < -1e-12 * std::abs(raw_max)) throw DomainError("fringe evaluation produced a negative rate");
    v = std::max(v, 0.0);
  }
  const double smax = *std::max_element(shape_values.begin(), shape_values.end());
  const double scale = std::exp(log_scale);

  out.rates.resize(n);
  out.log_rates.resize(n);
  out.normalized.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.rates[i] = scale * shape_values[i];
    out.log_rates[i] = shape_values[i] > 0.0 ? log_scale + std::log(shape_values[i])
                                             : -std::numeric_limits<double>::infinity();
    out.normalized[i] = smax > 0.0 ? shape_values[i] / smax : 0.0;
  }

  if (smax > 0.0) {
    const Extrema e = locate_extrema(shape, grid);
    out.rate_max = scale * e.value_max;
    out.rate_min = scale * std::max(e.value_min, 0.0);
    out.visibility = visibility_from_extrema(e.value_max, std::max(e.value_min, 0.0));
    out.visibility_defined = true;
  } else {
    out.visibility = std::numeric_limits<double>::quiet_NaN();
    out.visibility_defined = false;
  }
  return out;
}

double visibility(const FringePattern& pattern) {
  if (!pattern.visibility_defined) {
    throw UndefinedVisibilityError("visibility undefined for an all-zero fringe");
  }
  return visibility_from_extrema(pattern.rate_max, pattern.rate_min);
}

double half_max_width(const RateFunction& rate, double period) {
  // Scan outward from phi = 0 over half a period.
  constexpr int kScan = 4096;
  const double half = 0.5 * period;
  double fmax = rate(0.0);
  for (int i = 1; i <= kScan; ++i) fmax = std::max(fmax, rate(half * i / kScan));
  if (!(fmax > 0.0)) throw UndefinedVisibilityError("half-max width undefined for an all-zero fringe");
  const double level = 0.5 * fmax;
  auto g = [&](double x) { return rate(x) - level; };
  double prev = 0.0;
  for (int i = 1; i <= kScan; ++i) {
    const double x = half * i / kScan;
    if (g(x) < 0.0) {
      double lo = prev, hi = x;
      for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
        const double mid = 0.5 * (lo + hi);
        (g(mid) >= 0.0 ? lo : hi) = mid;
      }
      return 2.0 * 0.5 * (lo + hi);
    }
    prev = x;
  }
  return period;
}

double shift_mismatch(const RateFunction& rate, std::span<const double> grid, double shift) {
  double worst = 0.0;
  double scale = 0.0;
  for (double phi : grid) {
    const double a = rate(phi);
    const double b = rate(phi + shift);
    worst = std::max(worst, std::abs(a - b));
    scale = std::max({scale, std::abs(a), std::abs(b)});
  }
  return scale > 0.0 ? worst / scale : 0.0;
}

}  // namespace ndpo
