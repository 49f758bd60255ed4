#pragma once

#include <array>
#include <limits>
#include <string_view>

#include "ndpo/params.hpp"

namespace ndpo {

// Closed-form p-photon absorption rates at phase phi = 2kx, in units of
// (photon flux)^p up to the absorber cross-section.

// Below-threshold rate, valid for 0 <= r <= 1 - 1e-6 (warns once above 0.99).
double rate_below(int p, double r, double phi);

// sum_s (2s)!(2p-2s)!/(s!^2 (p-s)!^2) (1 + cos phi)^s (1 - cos phi)^(p-s):
// the pump-independent shape of the far-above-threshold fringe.
double above_threshold_shape(int p, double phi);

// p * log(a1 r sqrt(2 n0) / 8). Requires a1 > 0.
double log_above_threshold_prefactor(int p, const DerivedParams& derived);

// Far-above-threshold asymptotic rate. Rejects a1 <= 0, and a1 < min_a1
// where the asymptotic form is not trustworthy.
double rate_above_asymptotic(int p, const DerivedParams& derived, double phi,
                             double min_a1 = kDefaultBand);
double log_rate_above_asymptotic(int p, const DerivedParams& derived, double phi,
                                 double min_a1 = kDefaultBand);

// Explicit below-threshold rows for p = 1..6.
double table1_rate(int p, double r, double phi);
std::string_view table1_expression(int p);

// Below-threshold visibility rows for p = 1..6 and their r -> 1- limits
// as tabulated to two decimals (NaN for p = 1, which has no fringe).
inline constexpr std::array<double, 6> kTable2Limits = {
    std::numeric_limits<double>::quiet_NaN(), 0.20, 0.43, 0.63, 0.77, 0.87};

double table2_visibility(int p, double r);
std::string_view table2_expression(int p);

struct ClosedFormVisibility {
  double value = 0.0;
  // true when p > 6 and the value came from a numerically located fringe.
  bool fallback = false;
};

ClosedFormVisibility visibility_below_closed_form(int p, double r);

}  // namespace ndpo
