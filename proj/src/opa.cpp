#include "ndpo/opa.hpp"

#include <cmath>

#include "ndpo/analytic.hpp"
#include "ndpo/error.hpp"

namespace ndpo {
namespace {

void check_gain(double G) {
  if (!(G >= 0.0)) throw DomainError("OPA gain G must be >= 0");
}

}  // namespace

double r_from_gain(double G) {
  check_gain(G);
  return std::tanh(G);
}

double gain_from_r(double r) {
  if (!(r >= 0.0) || r >= 1.0) throw DomainError("gain_from_r needs 0 <= r < 1");
  return std::atanh(r);
}

double opa_rate(int p, double G, double phi) { return rate_below(p, r_from_gain(G), phi); }

double opa_visibility(int p, double G) { return visibility_below_closed_form(p, r_from_gain(G)).value; }

}  // namespace ndpo
