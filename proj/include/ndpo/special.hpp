#pragma once

// Special functions shared by the analytic, moment and oracle modules.

namespace ndpo::special {

// n! from an extended-precision table for n <= 40, log-gamma beyond.
long double factorial(int n);
double log_factorial(int n);
double binomial(int n, int k);

// Scaled complementary error function exp(x^2) erfc(x). Finite for all
// x > -26 and accurate to a few ulp; decays like 1/(x sqrt(pi)) for large x.
double erfcx(double x);

// log(erfc(x)) without underflow for large positive x.
double log_erfc(double x);

// B(s + 1/2, t + 1/2) for non-negative integers s, t. Exact factorial form
// for s + t <= 20, log space beyond.
double half_integer_beta(int s, int t);
double log_half_integer_beta(int s, int t);

}  // namespace ndpo::special
