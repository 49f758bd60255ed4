#pragma once

namespace ndpo {

// High-gain optical parametric amplifier with single-pass gain G. Its
// multi-photon rates coincide with the below-threshold oscillator at r = tanh(G).
struct OpaParams {
  double G = 0.0;
};

double r_from_gain(double G);
// Inverse of r_from_gain; throws DomainError unless 0 <= r < 1.
double gain_from_r(double r);

double opa_rate(int p, double G, double phi);
double opa_visibility(int p, double G);

}  // namespace ndpo
