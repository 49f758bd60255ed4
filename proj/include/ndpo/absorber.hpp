#pragma once

#include <array>
#include <complex>
#include <compare>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include <boost/rational.hpp>

namespace ndpo {

inline constexpr int kMaxAbsorberOrder = 12;

using Rational = boost::rational<std::int64_t>;

struct GaussianRational {
  Rational re{0};
  Rational im{0};

  bool is_zero() const { return re.numerator() == 0 && im.numerator() == 0; }
  std::complex<long double> value() const;

  friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend bool operator==(const GaussianRational&, const GaussianRational&) = default;
};

// Half-exponents of <u1^(2s) u2^(2m) u3^(2t) u4^(2n)>.
struct MomentKey {
  int s = 0;
  int t = 0;
  int m = 0;
  int n = 0;

  int order() const { return s + t + m + n; }
  auto operator<=>(const MomentKey&) const = default;
};

// coefficient * cos(phi/2)^cos_power * sin(phi/2)^sin_power
struct TrigMonomial {
  int cos_power = 0;
  int sin_power = 0;
  GaussianRational coefficient;
};

struct AbsorberTerm {
  std::array<int, 4> exponents{};  // powers of u1, u2, u3, u4
  std::vector<TrigMonomial> coefficient;

  // Odd powers of any u integrate to zero against the stationary distribution.
  bool vanishes_on_contraction() const;
  MomentKey key() const;
};

// Exact expansion of [alpha3 alpha3*]^p in the pseudo-quadratures u1..u4,
// without the (r sqrt(2 n0))^p prefactor. Each factor alpha3 alpha3* is
//   [(u1 - u2) C + i (u3 - u4) S] [(u1 + u2) C - i (u3 + u4) S],
// C = cos(phi/2), S = sin(phi/2).
class AbsorberPolynomial {
 public:
  AbsorberPolynomial(int order, std::vector<AbsorberTerm> terms)
      : order_(order), terms_(std::move(terms)) {}

  int order() const { return order_; }
  std::span<const AbsorberTerm> terms() const { return terms_; }
  std::size_t contributing_terms() const;

  std::complex<double> evaluate(std::span<const double, 4> u, double phi) const;

 private:
  int order_;
  std::vector<AbsorberTerm> terms_;
};

// Throws ResourceError for p > kMaxAbsorberOrder.
AbsorberPolynomial expand_absorber_power(int p);

// Shared immutable expansion, built once per order.
std::shared_ptr<const AbsorberPolynomial> cached_absorber_power(int p);

// The single bracketed product, evaluated directly.
std::complex<double> absorber_factor(std::span<const double, 4> u, double phi);

}  // namespace ndpo
