#pragma once

#include <vector>

#include "ndpo/absorber.hpp"
#include "ndpo/moments.hpp"
#include "ndpo/params.hpp"

namespace ndpo {

enum class KronrodScheme { GK15, GK31, GK61 };

struct QuadratureSpec {
  double upper_cut = 0.0;  // radial cut in rho; 0 selects sqrt(max(a1, 0) + 12) + 12
  KronrodScheme scheme = KronrodScheme::GK31;
  double rel_tol = 1e-12;
  unsigned max_depth = 15;
};

double default_radial_cut(double a1);

// R(S, a1) by adaptive Gauss-Kronrod over [0, cut]. The log form works in a
// scaled integrand and stays finite where R underflows (a1 << 0).
double quad_radial(int S, double a1, const QuadratureSpec& spec = {});
double quad_log_radial(int S, double a1, const QuadratureSpec& spec = {});

// Moments of the full stationary distribution
//   P ~ exp{a1 x + a2 y - [(x + y)^2 + 4 x y] / 2},  x = u1^2 + u3^2, y = u2^2 + u4^2,
// reduced to a 2-D (x, y) integral. Angular parts contribute B/pi factors.
class FullMomentTable {
 public:
  FullMomentTable(const DerivedParams& derived, int max_order, const QuadratureSpec& spec = {});

  // <x^k y^l> / <1>
  double radial_moment(int k, int l) const;
  // <u1^(2s) u2^(2m) u3^(2t) u4^(2n)>
  double moment(const MomentKey& key) const;
  int max_order() const { return max_order_; }

 private:
  int max_order_;
  std::vector<std::vector<double>> table_;
};

double quad_moment_full(int s, int t, int m, int n, const DerivedParams& derived, const QuadratureSpec& spec = {});

// Rate from contracting the absorber expansion against full-distribution moments.
class QuadratureEngine {
 public:
  static constexpr int kMaxOrder = 4;

  QuadratureEngine(int p, const DerivedParams& derived, const QuadratureSpec& spec = {});

  double shape(double phi) const { return fringe_(phi); }
  double rate(double phi) const;

 private:
  double log_prefactor_;
  ContractedFringe fringe_;
};

double rate_quadrature(int p, const DerivedParams& derived, double phi, const QuadratureSpec& spec = {});

}  // namespace ndpo
