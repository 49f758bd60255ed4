#include "ndpo/analytic.hpp"

#include <atomic>
#include <cmath>
#include <sstream>

#include "ndpo/diagnostics.hpp"
#include "ndpo/error.hpp"
#include "ndpo/fringe.hpp"
#include "ndpo/special.hpp"

namespace ndpo {
namespace {

constexpr double kBelowWarnAbove = 0.99;
constexpr double kBelowHardLimit = 1.0 - 1e-6;

void check_order(int p) {
  if (p < 1) throw DomainError("absorber order p must be >= 1");
}

void check_below_pump(double r) {
  if (!(r >= 0.0)) throw ParameterError("pump parameter r must be >= 0");
  if (r >= 1.0) {
    throw DomainError(
        "below-threshold formula needs r < 1; use the above-threshold path "
        "(rate_above_asymptotic or the general moment engine)");
  }
  if (r > kBelowHardLimit) {
    throw DomainError("r within 1e-6 of threshold; use the general moment engine");
  }
  if (r > kBelowWarnAbove) {
    static std::atomic_flag warned = ATOMIC_FLAG_INIT;
    if (!warned.test_and_set()) {
      warn("r > 0.99: factorized below-threshold distribution is approximate this close to threshold");
    }
  }
}

void check_table_order(int p) {
  if (p < 1 || p > 6) throw DomainError("tabulated rows cover p = 1..6");
}

// (2k)!(2p-2k)! / (k!^2 (p-k)!^2)
long double central_weight(int p, int k) {
  using special::factorial;
  const long double fk = factorial(k);
  const long double fpk = factorial(p - k);
  return factorial(2 * k) * factorial(2 * p - 2 * k) / (fk * fk * fpk * fpk);
}

}  // namespace

double rate_below(int p, double r, double phi) {
  check_order(p);
  check_below_pump(r);
  const long double rr = r;
  const long double c = std::cos(static_cast<long double>(phi));
  long double sum = 0.0L;
  for (int k = 0; k <= p; ++k) {
    sum += central_weight(p, k) * std::pow(rr + c, k) * std::pow(rr - c, p - k);
  }
  const long double pre = std::pow(rr / (4.0L * (1.0L - rr * rr)), p) * special::factorial(p);
  return static_cast<double>(pre * sum);
}

double above_threshold_shape(int p, double phi) {
  check_order(p);
  const long double c = std::cos(static_cast<long double>(phi));
  long double sum = 0.0L;
  for (int s = 0; s <= p; ++s) {
    sum += central_weight(p, s) * std::pow(1.0L + c, s) * std::pow(1.0L - c, p - s);
  }
  return static_cast<double>(sum);
}

double log_above_threshold_prefactor(int p, const DerivedParams& d) {
  check_order(p);
  if (!(d.a1 > 0.0)) throw DomainError("above-threshold asymptotic form needs a1 > 0");
  return p * std::log(d.a1 * d.r * std::sqrt(2.0 * d.n0) / 8.0);
}

double log_rate_above_asymptotic(int p, const DerivedParams& d, double phi, double min_a1) {
  if (!(d.a1 > 0.0)) throw DomainError("above-threshold asymptotic form needs a1 > 0");
  if (d.a1 < min_a1) {
    std::ostringstream msg;
    msg << "a1 = " << d.a1 << " < " << min_a1
        << ": too close to threshold for the asymptotic form; use the general moment engine";
    throw DomainError(msg.str());
  }
  return log_above_threshold_prefactor(p, d) + std::log(above_threshold_shape(p, phi));
}

double rate_above_asymptotic(int p, const DerivedParams& d, double phi, double min_a1) {
  return std::exp(log_rate_above_asymptotic(p, d, phi, min_a1));
}

double table1_rate(int p, double r, double phi) {
  check_table_order(p);
  if (!(r >= 0.0) || r >= 1.0) throw DomainError("table rows need 0 <= r < 1");
  const double c2 = std::cos(phi) * std::cos(phi);
  const double r2 = r * r;
  const double q = 1.0 - r2;
  switch (p) {
    case 1: return r2 / q;
    case 2: return r2 / (q * q) * (c2 + 2.0 * r2);
    case 3: return 3.0 * r2 * r2 / std::pow(q, 3) * (3.0 * c2 + 2.0 * r2);
    case 4:
      return 3.0 * r2 * r2 / std::pow(q, 4) * (3.0 * c2 * c2 + 24.0 * r2 * c2 + 8.0 * r2 * r2);
    case 5:
      return 15.0 * r2 * r2 * r2 / std::pow(q, 5) *
             (15.0 * c2 * c2 + 40.0 * r2 * c2 + 8.0 * r2 * r2);
    default:
      return 45.0 * r2 * r2 * r2 / std::pow(q, 6) *
             (5.0 * c2 * c2 * c2 + 90.0 * r2 * c2 * c2 + 120.0 * r2 * r2 * c2 +
              16.0 * r2 * r2 * r2);
  }
}

std::string_view table1_expression(int p) {
  check_table_order(p);
  static constexpr std::string_view rows[] = {
      "r^2/(1-r^2)",
      "r^2/(1-r^2)^2*[cos^2(phi)+2r^2]",
      "3r^4/(1-r^2)^3*[3cos^2(phi)+2r^2]",
      "3r^4/(1-r^2)^4*[3cos^4(phi)+24r^2cos^2(phi)+8r^4]",
      "15r^6/(1-r^2)^5*[15cos^4(phi)+40r^2cos^2(phi)+8r^4]",
      "45r^6/(1-r^2)^6*[5cos^6(phi)+90r^2cos^4(phi)+120r^4cos^2(phi)+16r^6]",
  };
  return rows[p - 1];
}

double table2_visibility(int p, double r) {
  check_table_order(p);
  if (!(r >= 0.0) || r >= 1.0) throw DomainError("table rows need 0 <= r < 1");
  const double r2 = r * r;
  const double r4 = r2 * r2;
  switch (p) {
    case 1: return 0.0;
    case 2: return 1.0 - 4.0 * r2 / (1.0 + 4.0 * r2);
    case 3: return 1.0 - 4.0 * r2 / (3.0 + 4.0 * r2);
    case 4: return 1.0 - 16.0 * r4 / (3.0 + 24.0 * r2 + 16.0 * r4);
    case 5: return 1.0 - 16.0 * r4 / (15.0 + 40.0 * r2 + 16.0 * r4);
    default: return 1.0 - 32.0 * r4 * r2 / (5.0 + 90.0 * r2 + 120.0 * r4 + 32.0 * r4 * r2);
  }
}

std::string_view table2_expression(int p) {
  check_table_order(p);
  static constexpr std::string_view rows[] = {
      "0",
      "1-4r^2/[1+4r^2]",
      "1-4r^2/[3+4r^2]",
      "1-16r^4/[3+24r^2+16r^4]",
      "1-16r^4/[15+40r^2+16r^4]",
      "1-32r^6/[5+90r^2+120r^4+32r^6]",
  };
  return rows[p - 1];
}

ClosedFormVisibility visibility_below_closed_form(int p, double r) {
  check_order(p);
  if (!(r >= 0.0) || r >= 1.0) throw DomainError("below-threshold visibility needs 0 <= r < 1");
  if (p <= 6) return {table2_visibility(p, r), false};
  const auto grid = phase_grid();
  return {visibility([p, r](double phi) { return rate_below(p, r, phi); }, grid), true};
}

}  // namespace ndpo
