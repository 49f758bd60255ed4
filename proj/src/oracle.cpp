#include "ndpo/oracle.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "ndpo/error.hpp"
#include "ndpo/special.hpp"

namespace ndpo {
namespace {

constexpr double kInnerCut = 80.0;  // v^l e^(-v) tail < 1e-26 for l <= 6

template <unsigned Points, class F>
double gk(F f, double a, double b, const QuadratureSpec& spec, double* err, double* l1) {
  return boost::math::quadrature::gauss_kronrod<double, Points>::integrate(f, a, b, spec.max_depth, spec.rel_tol,
                                                                           err, l1);
}

template <class F>
double panel(F f, double a, double b, const QuadratureSpec& spec, const char* what) {
  double err = 0.0;
  double l1 = 0.0;
  double value = 0.0;
  switch (spec.scheme) {
    case KronrodScheme::GK15: value = gk<15>(f, a, b, spec, &err, &l1); break;
    case KronrodScheme::GK31: value = gk<31>(f, a, b, spec, &err, &l1); break;
    case KronrodScheme::GK61: value = gk<61>(f, a, b, spec, &err, &l1); break;
  }
  if (!std::isfinite(value) || err > 100.0 * spec.rel_tol * l1 + std::numeric_limits<double>::min()) {
    std::ostringstream msg;
    msg << what << ": quadrature on [" << a << ", " << b << "] did not reach tolerance " << spec.rel_tol;
    throw ConvergenceError(msg.str(), value, err);
  }
  return value;
}

// Integrates f over [lo, hi] split at the given interior points.
template <class F>
double integrate_panels(F f, double lo, double hi, std::vector<double> points, const QuadratureSpec& spec,
                        const char* what) {
  points.push_back(lo);
  points.push_back(hi);
  std::erase_if(points, [&](double x) { return !(x >= lo && x <= hi); });
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < points.size(); ++i) sum += panel(f, points[i], points[i + 1], spec, what);
  return sum;
}

std::vector<double> ridge_points(double center, double width) {
  std::vector<double> pts{center};
  for (double k : {0.5, 1.0, 2.0, 4.0, 8.0, 16.0, 32.0}) {
    pts.push_back(center - k * width);
    pts.push_back(center + k * width);
  }
  return pts;
}

void check_odd(int S) {
  if (S < 1 || S % 2 == 0) throw DomainError("radial integral needs odd S >= 1");
}

}  // namespace

double default_radial_cut(double a1) { return std::sqrt(std::max(a1, 0.0) + 12.0) + 12.0; }

double quad_log_radial(int S, double a1, const QuadratureSpec& spec) {
  check_odd(S);
  const double cut = spec.upper_cut > 0.0 ? spec.upper_cut : default_radial_cut(a1);
  if (a1 >= 0.0) {
    const double center = std::sqrt(a1);
    const double width = 1.0 / std::sqrt(1.0 + 4.0 * a1);
    auto f = [=](double rho) {
      const double q = rho * rho - a1;
      return std::pow(rho, S) * std::exp(-0.5 * q * q);
    };
    return std::log(integrate_panels(f, 0.0, cut, ridge_points(center, width), spec, "quad_radial"));
  }
  // exp(-(rho^2 - a1)^2 / 2) = exp(-a1^2 / 2) exp(a1 rho^2 - rho^4 / 2)
  const double width = 1.0 / std::sqrt(1.0 - a1);
  const double center = std::sqrt(0.5 * S) * width;
  auto f = [=](double rho) {
    const double r2 = rho * rho;
    return std::pow(rho, S) * std::exp(a1 * r2 - 0.5 * r2 * r2);
  };
  return std::log(integrate_panels(f, 0.0, cut, ridge_points(center, width), spec, "quad_radial")) -
         0.5 * a1 * a1;
}

double quad_radial(int S, double a1, const QuadratureSpec& spec) { return std::exp(quad_log_radial(S, a1, spec)); }

FullMomentTable::FullMomentTable(const DerivedParams& d, int max_order, const QuadratureSpec& spec)
    : max_order_(max_order) {
  if (max_order < 0 || max_order > 6) throw DomainError("full-distribution moments support s + t + m + n <= 6");
  if (!(d.a2 < 0.0)) throw DomainError("full-distribution moments need a2 < 0");
  const double a1 = d.a1;
  const double cut = spec.upper_cut > 0.0 ? spec.upper_cut : default_radial_cut(a1);
  const double x_cut = cut * cut;

  // x = sx t, y = sy v, with scales set so the bulk of the mass sits at t, v = O(1).
  const bool scaled_x = a1 < -1.0;
  const double sx = scaled_x ? 1.0 / -a1 : 1.0;
  const double sy = 1.0 / -d.a2;
  const double shift = a1 > 0.0 ? 0.5 * a1 * a1 : 0.0;
  const double t_cut = x_cut / sx;
  const std::vector<double> t_points =
      scaled_x ? std::vector<double>{0.5, 1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 64.0, 128.0}
               : ridge_points(std::max(a1, 0.0), 1.0);
  const std::vector<double> v_points{0.5, 1.0, 2.0, 4.0, 8.0, 16.0, 32.0};

  QuadratureSpec inner_spec = spec;
  inner_spec.rel_tol = std::max(spec.rel_tol * 0.1, 1e-15);

  auto raw = [&](int k, int l) {
    auto outer = [&](double t) {
      const double x = sx * t;
      const double decay = 1.0 + 3.0 * x * sy;
      auto inner = [&](double v) {
        const double yv = sy * v;
        return std::pow(v, l) * std::exp(-decay * v - 0.5 * yv * yv);
      };
      const double iv = integrate_panels(inner, 0.0, kInnerCut, v_points, inner_spec, "quad_moment_full");
      return std::pow(t, k) * std::exp(a1 * x - 0.5 * x * x - shift) * iv;
    };
    return integrate_panels(outer, 0.0, t_cut, t_points, spec, "quad_moment_full");
  };

  const double norm = raw(0, 0);
  table_.assign(static_cast<std::size_t>(max_order) + 1, {});
  for (int k = 0; k <= max_order; ++k) {
    table_[k].assign(static_cast<std::size_t>(max_order - k) + 1, 0.0);
    for (int l = 0; l + k <= max_order; ++l) {
      table_[k][l] = (k == 0 && l == 0) ? 1.0 : raw(k, l) / norm * std::pow(sx, k) * std::pow(sy, l);
    }
  }
}

double FullMomentTable::radial_moment(int k, int l) const {
  if (k < 0 || l < 0 || k + l > max_order_) throw std::out_of_range("full moment order out of range");
  return table_[k][l];
}

double FullMomentTable::moment(const MomentKey& key) const {
  return radial_moment(key.s + key.t, key.m + key.n) * special::half_integer_beta(key.s, key.t) *
         special::half_integer_beta(key.m, key.n) / (std::numbers::pi * std::numbers::pi);
}

double quad_moment_full(int s, int t, int m, int n, const DerivedParams& d, const QuadratureSpec& spec) {
  if (s < 0 || t < 0 || m < 0 || n < 0) throw DomainError("moment half-exponents must be >= 0");
  return FullMomentTable(d, s + t + m + n, spec).moment(MomentKey{s, t, m, n});
}

namespace {

ContractedFringe quadrature_fringe(int p, const DerivedParams& d, const QuadratureSpec& spec) {
  if (p < 1 || p > QuadratureEngine::kMaxOrder) throw DomainError("quadrature rates support 1 <= p <= 4");
  const FullMomentTable table(d, p, spec);
  return contract(*cached_absorber_power(p),
                  [&table](const MomentKey& key) { return static_cast<long double>(table.moment(key)); });
}

}  // namespace

QuadratureEngine::QuadratureEngine(int p, const DerivedParams& d, const QuadratureSpec& spec)
    : log_prefactor_(p * std::log(d.r * std::sqrt(2.0 * d.n0))), fringe_(quadrature_fringe(p, d, spec)) {}

double QuadratureEngine::rate(double phi) const { return std::exp(log_prefactor_) * shape(phi); }

double rate_quadrature(int p, const DerivedParams& d, double phi, const QuadratureSpec& spec) {
  return QuadratureEngine(p, d, spec).rate(phi);
}

}  // namespace ndpo
