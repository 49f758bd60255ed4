#include "ndpo/moments.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "ndpo/error.hpp"
#include "ndpo/special.hpp"

namespace ndpo {
namespace {

constexpr double kBackwardBelow = -1.0;
constexpr int kMillerExtra = 2000;

long double gaussian_moment_ld(int k, long double a) {
  // (2k)! / (k! (4|a|)^k) = prod_{j=1..k} (2j - 1) / (2|a|)
  long double m = 1.0L;
  const long double inv = 1.0L / (2.0L * std::abs(a));
  for (int j = 1; j <= k; ++j) m *= (2.0L * j - 1.0L) * inv;
  return m;
}

long double half_integer_beta_ld(int s, int t) {
  if (s + t > 20) return std::exp(static_cast<long double>(special::log_half_integer_beta(s, t)));
  using special::factorial;
  return std::numbers::pi_v<long double> * factorial(2 * s) * factorial(2 * t) /
         (std::ldexp(1.0L, 2 * (s + t)) * factorial(s) * factorial(t) * factorial(s + t));
}

void check_gaussian_width(double a) {
  if (!(a < 0.0)) {
    std::ostringstream msg;
    msg << "Gaussian moment needs a < 0 (got " << a << ")";
    throw DomainError(msg.str());
  }
}

}  // namespace

double gaussian_even_moment(int k, double a) {
  if (k < 0) throw DomainError("moment order must be >= 0");
  check_gaussian_width(a);
  return static_cast<double>(gaussian_moment_ld(k, a));
}

double log_normalization_N(double a1) {
  return 0.5 * std::log(2.0) - 1.5 * std::log(std::numbers::pi) - special::log_erfc(-a1 / std::numbers::sqrt2);
}

double normalization_N(double a1) { return std::exp(log_normalization_N(a1)); }

RadialTable::RadialTable(double a1, int max_k) : a1_(a1) {
  if (max_k < 0) throw DomainError("radial table needs max_k >= 0");
  const long double a = a1;
  const double z = -a1 / std::numbers::sqrt2;
  const long double sqrt_half_pi = std::sqrt(std::numbers::pi_v<long double> / 2.0L);
  log_base_ = 0.5 * std::log(std::numbers::pi / 2.0) + special::log_erfc(z);

  ratios_.assign(static_cast<std::size_t>(max_k) + 1, 1.0L);
  if (max_k == 0) return;

  if (a1 >= kBackwardBelow) {
    // I_1 = a I_0 + exp(-a^2/2), so I_1/I_0 = a + h.
    long double h;
    if (a1 < 0.0) {
      h = 1.0L / (sqrt_half_pi * special::erfcx(z));
    } else {
      h = std::exp(-0.5L * a * a) / (sqrt_half_pi * std::erfc(static_cast<long double>(z)));
    }
    ratios_[1] = a + h;
    for (int k = 1; k < max_k; ++k) {
      ratios_[k + 1] = a * ratios_[k] + k * ratios_[k - 1];
    }
    return;
  }

  // Backward: rho_k = I_k / I_(k-1) = k / (rho_(k+1) - a).
  const int top = max_k + kMillerExtra;
  long double rho = std::sqrt(static_cast<long double>(top));
  std::vector<long double> rhos(static_cast<std::size_t>(max_k) + 1, 0.0L);
  for (int k = top; k >= 1; --k) {
    rho = static_cast<long double>(k) / (rho - a);
    if (k <= max_k) rhos[k] = rho;
  }
  for (int k = 1; k <= max_k; ++k) ratios_[k] = ratios_[k - 1] * rhos[k];
}

long double RadialTable::ratio(int k) const {
  if (k < 0 || k > max_k()) throw std::out_of_range("radial table index out of range");
  return ratios_[static_cast<std::size_t>(k)];
}

double RadialTable::log_radial(int S) const {
  if (S < 1 || S % 2 == 0) throw DomainError("radial function needs odd S >= 1");
  return static_cast<double>(std::log(ratio((S - 1) / 2))) + log_base_ - std::log(2.0);
}

long double RadialTable::coupled_moment(int s, int t) const {
  // 2 N R(1) = 1/pi, so 2 N R(2k+1) = (I_k / I_0) / pi.
  return ratio(s + t) * half_integer_beta_ld(s, t) / std::numbers::pi_v<long double>;
}

double log_radial_R(int S, double a1) {
  if (S < 1 || S % 2 == 0) throw DomainError("radial function needs odd S >= 1");
  return RadialTable(a1, (S - 1) / 2).log_radial(S);
}

double radial_R(int S, double a1) { return std::exp(log_radial_R(S, a1)); }

double coupled_moment(int s, int t, double a1) {
  if (s < 0 || t < 0) throw DomainError("moment half-exponents must be >= 0");
  const double log_value = std::log(2.0) + log_normalization_N(a1) + log_radial_R(2 * s + 2 * t + 1, a1) +
                           special::log_half_integer_beta(s, t);
  return std::exp(log_value);
}

double ContractedFringe::operator()(double phi) const {
  const long double c = std::cos(0.5L * phi);
  const long double s = std::sin(0.5L * phi);
  long double sum = 0.0L;
  for (const auto& term : coefficients_) {
    sum += term.value * std::pow(c, term.cos_power) * std::pow(s, term.sin_power);
  }
  return static_cast<double>(sum);
}

ContractedFringe contract(const AbsorberPolynomial& poly, const MomentFunction& moments) {
  std::map<std::pair<int, int>, long double> acc;
  for (const auto& term : poly.terms()) {
    if (term.vanishes_on_contraction()) continue;
    const MomentKey key = term.key();
    if (key.order() != poly.order()) {
      throw std::logic_error("absorber term violates s + t + m + n = p");
    }
    const long double mom = moments(key);
    for (const auto& tm : term.coefficient) {
      if (tm.coefficient.im.numerator() != 0) throw std::logic_error("even absorber term with imaginary coefficient");
      const long double c = static_cast<long double>(tm.coefficient.re.numerator()) /
                            static_cast<long double>(tm.coefficient.re.denominator());
      acc[{tm.cos_power, tm.sin_power}] += c * mom;
    }
  }
  std::vector<ContractedFringe::Coefficient> coeffs;
  coeffs.reserve(acc.size());
  for (const auto& [powers, value] : acc) coeffs.push_back({powers.first, powers.second, value});
  return ContractedFringe(std::move(coeffs));
}

MomentFunction regime_moments(const DerivedParams& d, const Regime& regime, int max_order) {
  const Regime actual = classify(d, regime.a1_band);
  const long double a2 = d.a2;
  check_gaussian_width(d.a2);
  switch (regime.tag) {
    case RegimeTag::Below: {
      if (actual.tag != RegimeTag::Below) {
        std::ostringstream msg;
        msg << "factorized Gaussian moments requested at a1 = " << d.a1 << ", outside the below-threshold band";
        throw DomainError(msg.str());
      }
      const long double a1 = d.a1;
      return [a1, a2](const MomentKey& k) {
        return gaussian_moment_ld(k.s, a1) * gaussian_moment_ld(k.t, a1) * gaussian_moment_ld(k.m, a2) *
               gaussian_moment_ld(k.n, a2);
      };
    }
    case RegimeTag::Above:
      if (actual.tag != RegimeTag::Above) {
        std::ostringstream msg;
        msg << "above-threshold regime requested at a1 = " << d.a1 << " < band " << regime.a1_band;
        throw DomainError(msg.str());
      }
      [[fallthrough]];
    case RegimeTag::NearThreshold: {
      auto table = std::make_shared<const RadialTable>(d.a1, max_order);
      return [table, a2](const MomentKey& k) {
        return table->coupled_moment(k.s, k.t) * gaussian_moment_ld(k.m, a2) * gaussian_moment_ld(k.n, a2);
      };
    }
  }
  throw std::logic_error("unknown regime tag");
}

MomentEngine::MomentEngine(int p, const DerivedParams& d, const Regime& regime)
    : p_(p),
      log_prefactor_(p * std::log(d.r * std::sqrt(2.0 * d.n0))),
      fringe_(contract(*cached_absorber_power(p), regime_moments(d, regime, p))) {}

double MomentEngine::rate(double phi) const { return std::exp(log_prefactor_) * shape(phi); }

double rate_general(int p, const DerivedParams& d, double phi, const Regime& regime) {
  return MomentEngine(p, d, regime).rate(phi);
}

double f_moment(int k, double r, double phi, double n0) {
  if (k < 0) throw DomainError("moment order must be >= 0");
  if (!(r >= 0.0) || r >= 1.0) throw DomainError("F moments are defined below threshold only (0 <= r < 1)");
  const long double denom = std::pow(4.0L * std::sqrt(2.0L * n0) * (1.0L - static_cast<long double>(r) * r), k);
  return static_cast<double>(special::factorial(2 * k) / (special::factorial(k) * denom) *
                             std::pow(static_cast<long double>(r) + std::cos(static_cast<long double>(phi)), k));
}

double f_moment_expanded(int k, double a1, double a2, double phi) {
  check_gaussian_width(a1);
  check_gaussian_width(a2);
  const long double c2 = std::pow(std::cos(0.5L * phi), 2);
  const long double s2 = std::pow(std::sin(0.5L * phi), 2);
  long double sum = 0.0L;
  for (int l = 0; l <= k; ++l) {
    const long double sign = (k - l) % 2 == 0 ? 1.0L : -1.0L;
    sum += special::binomial(2 * k, 2 * l) * gaussian_moment_ld(l, a1) * gaussian_moment_ld(k - l, a2) * sign *
           std::pow(c2, l) * std::pow(s2, k - l);
  }
  return static_cast<double>(sum);
}

double f_decomposition_rate(int p, double r, double phi) {
  if (p < 1) throw DomainError("absorber order p must be >= 1");
  if (!(r >= 0.0) || r >= 1.0) throw DomainError("F decomposition holds below threshold only (0 <= r < 1)");
  const double n0 = kDefaultN0;
  // (-1)^(p-k) <F(u2, u3, phi)^(p-k)> = <F(u1, u4, phi + pi)^(p-k)>
  long double sum = 0.0L;
  for (int k = 0; k <= p; ++k) {
    sum += special::binomial(p, k) * static_cast<long double>(f_moment(k, r, phi, n0)) *
           f_moment(p - k, r, phi + std::numbers::pi, n0);
  }
  return static_cast<double>(std::pow(static_cast<long double>(r) * std::sqrt(2.0L * n0), p) * sum);
}

}  // namespace ndpo
