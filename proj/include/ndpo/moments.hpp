#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "ndpo/absorber.hpp"
#include "ndpo/params.hpp"

namespace ndpo {

// <u^(2k)> = (2k)! / (k! (4|a|)^k) for a Gaussian weight exp(-|a| u^2).
// Throws DomainError unless a < 0.
double gaussian_even_moment(int k, double a);

// N = sqrt(2) / (pi^(3/2) erfc(-a1/sqrt(2))). normalization_N overflows
// double for a1 below about -37; the log form is finite for every a1.
double normalization_N(double a1);
double log_normalization_N(double a1);

// Radial integrals I_k = int_0^inf x^k exp(-(x - a1)^2 / 2) dx, so that
// R(2k+1, a1) = I_k / 2. Stored as the ratios I_k / I_0 plus log I_0.
// The three-term recursion I_(k+1) = a1 I_k + k I_(k-1) is run forward
// for a1 >= -1 and backward (Miller) below that, where I_k is the minimal
// solution and forward recursion cancels catastrophically.
class RadialTable {
 public:
  RadialTable(double a1, int max_k);

  double a1() const { return a1_; }
  int max_k() const { return static_cast<int>(ratios_.size()) - 1; }
  long double ratio(int k) const;  // I_k / I_0
  double log_base() const { return log_base_; }

  // log R(S, a1) for odd S = 2k + 1 <= 2 max_k + 1.
  double log_radial(int S) const;
  // <u1^(2s) u3^(2t)> under N exp(-(u1^2 + u3^2 - a1)^2 / 2).
  long double coupled_moment(int s, int t) const;

 private:
  double a1_;
  double log_base_;
  std::vector<long double> ratios_;
};

// R(S, a1) = int_0^inf rho^S exp(-(rho^2 - a1)^2 / 2) d rho, S odd >= 1.
double radial_R(int S, double a1);
double log_radial_R(int S, double a1);

// <u1^(2s) u3^(2t)> = 2 N R(2s + 2t + 1, a1) B(s + 1/2, t + 1/2).
double coupled_moment(int s, int t, double a1);

// Real trigonometric polynomial sum_ab c_ab cos(phi/2)^a sin(phi/2)^b that
// results from contracting an absorber expansion against a moment set.
class ContractedFringe {
 public:
  struct Coefficient {
    int cos_power;
    int sin_power;
    long double value;
  };

  explicit ContractedFringe(std::vector<Coefficient> coefficients)
      : coefficients_(std::move(coefficients)) {}

  double operator()(double phi) const;
  const std::vector<Coefficient>& coefficients() const { return coefficients_; }

 private:
  std::vector<Coefficient> coefficients_;
};

using MomentFunction = std::function<long double(const MomentKey&)>;

// Throws std::logic_error if any contributing term violates
// s + t + m + n = p or carries an imaginary coefficient.
ContractedFringe contract(const AbsorberPolynomial& poly, const MomentFunction& moments);

// Moment set for a regime:
//   Below: four independent Gaussians (u1, u3 with a1; u2, u4 with a2).
//   NearThreshold / Above: coupled (u1, u3) radial moments, Gaussian (u2, u4).
// NearThreshold selects the coupled path for any a1; Below and Above are
// rejected when a1 lies on the wrong side of the band.
MomentFunction regime_moments(const DerivedParams& derived, const Regime& regime, int max_order);

// p-photon absorption rate from the full moment expansion. Build once and
// evaluate across many phases.
class MomentEngine {
 public:
  MomentEngine(int p, const DerivedParams& derived, const Regime& regime);

  // Rate divided by (r sqrt(2 n0))^p.
  double shape(double phi) const { return fringe_(phi); }
  double log_prefactor() const { return log_prefactor_; }
  double rate(double phi) const;
  int order() const { return p_; }
  const ContractedFringe& fringe() const { return fringe_; }

 private:
  int p_;
  double log_prefactor_;
  ContractedFringe fringe_;
};

double rate_general(int p, const DerivedParams& derived, double phi, const Regime& regime);

// <F(u1, u4, phi)^k> with F(ui, uj, phi) = [ui cos(phi/2) - i uj sin(phi/2)]^2
// under the below-threshold Gaussians: closed form and the direct sum over
// Gaussian moments.
double f_moment(int k, double r, double phi, double n0 = kDefaultN0);
double f_moment_expanded(int k, double a1, double a2, double phi);

// Below-threshold rate assembled from the binomial sum of F moments.
double f_decomposition_rate(int p, double r, double phi);

}  // namespace ndpo
