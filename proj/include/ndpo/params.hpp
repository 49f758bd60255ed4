#pragma once

#include <string_view>

namespace ndpo {

inline constexpr double kDefaultN0 = 1e6;
// Half-width of the near-threshold band in units of a1.
inline constexpr double kDefaultBand = 6.0;

// Physical rates of the oscillator. gamma: signal/idler cavity decay rate,
// gamma3: pump-mode decay rate, kappa: mode coupling, epsilon: normalized
// classical pump amplitude (real, non-negative).
struct NdpoParams {
  double gamma = 1.0;
  double gamma3 = 100.0;
  double kappa = 0.0;
  double epsilon = 0.0;
};

// Dimensionless quantities every other module works with.
//   n0    = 2 gamma gamma3 / kappa^2
//   r     = kappa epsilon / gamma          (r = 1 at threshold)
//   sigma = r n0
//   a1    = sqrt(2 n0) (r - 1),  a2 = -sqrt(2 n0) (r + 1)
struct DerivedParams {
  double n0 = kDefaultN0;
  double r = 0.0;
  double sigma = 0.0;
  double a1 = 0.0;
  double a2 = 0.0;
};

enum class RegimeTag { Below, NearThreshold, Above };

struct Regime {
  RegimeTag tag = RegimeTag::Below;
  double a1_band = kDefaultBand;
};

std::string_view to_string(RegimeTag tag);

// Throws ParameterError for non-positive rates, negative pump, or
// gamma3/gamma < 10; warns when gamma3/gamma < 100.
void validate(const NdpoParams& params);

DerivedParams derive(const NdpoParams& params);

// Builds the derived set from the scaled pair (n0, r), which fully
// determines every dimensionless result.
DerivedParams derive_scaled(double n0, double r);

// Rates reproducing a given (n0, r) with the supplied gamma and gamma3.
NdpoParams params_for(double n0, double r, double gamma = 1.0, double gamma3 = 100.0);

// Below iff a1 <= -band, Above iff a1 >= band, NearThreshold otherwise.
Regime classify(const DerivedParams& derived, double band = kDefaultBand);

}  // namespace ndpo
