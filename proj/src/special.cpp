#include "ndpo/special.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "ndpo/error.hpp"

namespace ndpo::special {
namespace {

constexpr int kTableMax = 40;

constexpr std::array<long double, kTableMax + 1> make_factorials() {
  std::array<long double, kTableMax + 1> f{};
  f[0] = 1.0L;
  for (int i = 1; i <= kTableMax; ++i) f[i] = f[i - 1] * static_cast<long double>(i);
  return f;
}

constexpr auto kFactorials = make_factorials();

// exp(x*x) with the square split into an exact head and a tail so that the
// exponent does not carry the rounding error of x*x.
double exp_square(double x) {
  const double hi = x * x;
  const double lo = std::fma(x, x, -hi);
  return std::exp(hi) * (1.0 + lo);
}

double erfcx_asymptotic(double x) {
  // 1/(x sqrt(pi)) * sum_k (-1)^k (2k-1)!! / (2x^2)^k, used for x >= 26.
  const double inv = 1.0 / (2.0 * x * x);
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k <= 12; ++k) {
    term *= -(2.0 * k - 1.0) * inv;
    sum += term;
  }
  return sum / (x * std::sqrt(std::numbers::pi));
}

}  // namespace

long double factorial(int n) {
  if (n < 0) throw DomainError("factorial of a negative integer");
  if (n <= kTableMax) return kFactorials[static_cast<std::size_t>(n)];
  return std::exp(std::lgamma(static_cast<long double>(n) + 1.0L));
}

double log_factorial(int n) {
  if (n < 0) throw DomainError("factorial of a negative integer");
  if (n <= kTableMax) return static_cast<double>(std::log(kFactorials[static_cast<std::size_t>(n)]));
  return std::lgamma(static_cast<double>(n) + 1.0);
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  if (n <= kTableMax) {
    return static_cast<double>(factorial(n) / (factorial(k) * factorial(n - k)));
  }
  return std::round(std::exp(log_factorial(n) - log_factorial(k) - log_factorial(n - k)));
}

double erfcx(double x) {
  if (std::isnan(x)) return x;
  if (x < 0.0) {
    if (x < -26.5) return HUGE_VAL;
    return 2.0 * exp_square(x) - erfcx(-x);
  }
  if (x < 26.0) return exp_square(x) * std::erfc(x);
  return erfcx_asymptotic(x);
}

double log_erfc(double x) {
  if (x <= 0.0) return std::log(std::erfc(x));
  return std::log(erfcx(x)) - x * x;
}

double log_half_integer_beta(int s, int t) {
  if (s < 0 || t < 0) throw DomainError("half-integer beta needs s, t >= 0");
  return std::lgamma(s + 0.5) + std::lgamma(t + 0.5) - std::lgamma(s + t + 1.0);
}

double half_integer_beta(int s, int t) {
  if (s < 0 || t < 0) throw DomainError("half-integer beta needs s, t >= 0");
  if (s + t > 20) return std::exp(log_half_integer_beta(s, t));
  // Gamma(k + 1/2) = (2k)! sqrt(pi) / (4^k k!)
  const long double num = factorial(2 * s) * factorial(2 * t);
  const long double den = std::ldexp(1.0L, 2 * (s + t)) * factorial(s) * factorial(t) * factorial(s + t);
  return static_cast<double>(std::numbers::pi_v<long double> * num / den);
}

}  // namespace ndpo::special
