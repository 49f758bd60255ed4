#include "ndpo/absorber.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <sstream>

#include "ndpo/error.hpp"

namespace ndpo {
namespace {

// (e1, e2, e3, e4, cos power, sin power)
using Monomial = std::array<int, 6>;
using Poly = std::map<Monomial, GaussianRational>;

Poly multiply(const Poly& a, const Poly& b) {
  Poly out;
  for (const auto& [ma, ca] : a) {
    for (const auto& [mb, cb] : b) {
      Monomial m;
      for (std::size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
      auto& slot = out[m];
      slot = slot + ca * cb;
    }
  }
  std::erase_if(out, [](const auto& kv) { return kv.second.is_zero(); });
  return out;
}

const GaussianRational kOne{1, 0};
const GaussianRational kMinusOne{-1, 0};
const GaussianRational kI{0, 1};
const GaussianRational kMinusI{0, -1};

Poly base_factor() {
  // (u1 - u2) C + i (u3 - u4) S
  const Poly left = {
      {{1, 0, 0, 0, 1, 0}, kOne},
      {{0, 1, 0, 0, 1, 0}, kMinusOne},
      {{0, 0, 1, 0, 0, 1}, kI},
      {{0, 0, 0, 1, 0, 1}, kMinusI},
  };
  // (u1 + u2) C - i (u3 + u4) S
  const Poly right = {
      {{1, 0, 0, 0, 1, 0}, kOne},
      {{0, 1, 0, 0, 1, 0}, kOne},
      {{0, 0, 1, 0, 0, 1}, kMinusI},
      {{0, 0, 0, 1, 0, 1}, kMinusI},
  };
  return multiply(left, right);
}

}  // namespace

std::complex<long double> GaussianRational::value() const {
  auto to_ld = [](const Rational& q) {
    return static_cast<long double>(q.numerator()) / static_cast<long double>(q.denominator());
  };
  return {to_ld(re), to_ld(im)};
}

bool AbsorberTerm::vanishes_on_contraction() const {
  for (int e : exponents) {
    if (e % 2 != 0) return true;
  }
  return false;
}

MomentKey AbsorberTerm::key() const {
  return {exponents[0] / 2, exponents[2] / 2, exponents[1] / 2, exponents[3] / 2};
}

std::size_t AbsorberPolynomial::contributing_terms() const {
  std::size_t n = 0;
  for (const auto& t : terms_) n += t.vanishes_on_contraction() ? 0 : 1;
  return n;
}

std::complex<double> AbsorberPolynomial::evaluate(std::span<const double, 4> u, double phi) const {
  const long double c = std::cos(0.5L * phi);
  const long double s = std::sin(0.5L * phi);
  std::complex<long double> total = 0.0L;
  for (const auto& term : terms_) {
    long double mono = 1.0L;
    for (std::size_t i = 0; i < 4; ++i) mono *= std::pow(static_cast<long double>(u[i]), term.exponents[i]);
    std::complex<long double> coeff = 0.0L;
    for (const auto& tm : term.coefficient) {
      coeff += tm.coefficient.value() * (std::pow(c, tm.cos_power) * std::pow(s, tm.sin_power));
    }
    total += coeff * mono;
  }
  return {static_cast<double>(total.real()), static_cast<double>(total.imag())};
}

AbsorberPolynomial expand_absorber_power(int p) {
  if (p < 1) throw DomainError("absorber order p must be >= 1");
  if (p > kMaxAbsorberOrder) {
    std::ostringstream msg;
    msg << "absorber order " << p << " exceeds the expansion limit " << kMaxAbsorberOrder;
    throw ResourceError(msg.str());
  }
  const Poly base = base_factor();
  Poly acc = base;
  for (int i = 1; i < p; ++i) acc = multiply(acc, base);

  std::map<std::array<int, 4>, std::vector<TrigMonomial>> grouped;
  for (const auto& [mono, coeff] : acc) {
    grouped[{mono[0], mono[1], mono[2], mono[3]}].push_back({mono[4], mono[5], coeff});
  }
  std::vector<AbsorberTerm> terms;
  terms.reserve(grouped.size());
  for (auto& [exps, trig] : grouped) terms.push_back({exps, std::move(trig)});
  return AbsorberPolynomial(p, std::move(terms));
}

std::shared_ptr<const AbsorberPolynomial> cached_absorber_power(int p) {
  static std::mutex mutex;
  static std::map<int, std::shared_ptr<const AbsorberPolynomial>> cache;
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(p); it != cache.end()) return it->second;
  }
  auto built = std::make_shared<const AbsorberPolynomial>(expand_absorber_power(p));
  std::lock_guard lock(mutex);
  return cache.try_emplace(p, std::move(built)).first->second;
}

std::complex<double> absorber_factor(std::span<const double, 4> u, double phi) {
  const double c = std::cos(0.5 * phi);
  const double s = std::sin(0.5 * phi);
  using namespace std::complex_literals;
  const std::complex<double> left = (u[0] - u[1]) * c + 1i * ((u[2] - u[3]) * s);
  const std::complex<double> right = (u[0] + u[1]) * c - 1i * ((u[2] + u[3]) * s);
  return left * right;
}

}  // namespace ndpo
