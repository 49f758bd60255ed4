#include "ndpo/params.hpp"

#include <cmath>
#include <sstream>

#include "ndpo/diagnostics.hpp"
#include "ndpo/error.hpp"

namespace ndpo {

std::string_view to_string(RegimeTag tag) {
  switch (tag) {
    case RegimeTag::Below: return "below";
    case RegimeTag::NearThreshold: return "near-threshold";
    case RegimeTag::Above: return "above";
  }
  return "unknown";
}

void validate(const NdpoParams& p) {
  if (!(p.gamma > 0.0) || !(p.gamma3 > 0.0) || !(p.kappa > 0.0)) {
    throw ParameterError("gamma, gamma3 and kappa must be strictly positive");
  }
  if (!(p.epsilon >= 0.0) || !std::isfinite(p.epsilon)) {
    throw ParameterError("epsilon must be a finite non-negative real");
  }
  const double ratio = p.gamma3 / p.gamma;
  if (ratio < 10.0) {
    std::ostringstream msg;
    msg << "gamma3/gamma = " << ratio << " < 10: pump mode cannot be adiabatically eliminated";
    throw ParameterError(msg.str());
  }
  if (ratio < 100.0) {
    std::ostringstream msg;
    msg << "gamma3/gamma = " << ratio << " < 100: adiabatic elimination is marginal";
    warn(msg.str());
  }
}

DerivedParams derive(const NdpoParams& p) {
  validate(p);
  DerivedParams d;
  d.n0 = 2.0 * p.gamma * p.gamma3 / (p.kappa * p.kappa);
  d.r = p.kappa * p.epsilon / p.gamma;
  const double root = std::sqrt(2.0 * d.n0);
  d.sigma = d.r * d.n0;
  d.a1 = root * (d.r - 1.0);
  d.a2 = -root * (d.r + 1.0);
  return d;
}

DerivedParams derive_scaled(double n0, double r) {
  if (!(n0 > 0.0) || !std::isfinite(n0)) throw ParameterError("n0 must be finite and > 0");
  if (!(r >= 0.0) || !std::isfinite(r)) throw ParameterError("r must be finite and >= 0");
  DerivedParams d;
  d.n0 = n0;
  d.r = r;
  const double root = std::sqrt(2.0 * n0);
  d.sigma = r * n0;
  d.a1 = root * (r - 1.0);
  d.a2 = -root * (r + 1.0);
  return d;
}

NdpoParams params_for(double n0, double r, double gamma, double gamma3) {
  if (!(n0 > 0.0) || !(r >= 0.0)) throw ParameterError("need n0 > 0 and r >= 0");
  NdpoParams p;
  p.gamma = gamma;
  p.gamma3 = gamma3;
  p.kappa = std::sqrt(2.0 * gamma * gamma3 / n0);
  p.epsilon = r * gamma / p.kappa;
  return p;
}

Regime classify(const DerivedParams& d, double band) {
  if (!(band > 0.0)) throw ParameterError("regime band must be > 0");
  Regime reg;
  reg.a1_band = band;
  if (d.a1 <= -band) {
    reg.tag = RegimeTag::Below;
  } else if (d.a1 >= band) {
    reg.tag = RegimeTag::Above;
  } else {
    reg.tag = RegimeTag::NearThreshold;
  }
  return reg;
}

}  // namespace ndpo
