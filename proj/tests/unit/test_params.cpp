#include <doctest.h>

#include <cmath>
#include <initializer_list>
#include <string>
#include <vector>

#include "ndpo/diagnostics.hpp"
#include "ndpo/error.hpp"
#include "ndpo/params.hpp"

using namespace ndpo;

namespace {

struct CaptureWarnings {
  std::vector<std::string> messages;
  WarningHandler previous;
  CaptureWarnings() {
    previous = set_warning_handler([this](std::string_view m) { messages.emplace_back(m); });
  }
  ~CaptureWarnings() { set_warning_handler(previous); }
};

}  // namespace

TEST_CASE("derived quantities from physical rates") {
  const NdpoParams p{1.0, 100.0, 0.02, 25.0};
  const auto d = derive(p);
  CHECK(d.n0 == doctest::Approx(2.0 * 1.0 * 100.0 / (0.02 * 0.02)).epsilon(1e-15));
  CHECK(d.r == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(d.sigma == doctest::Approx(d.r * d.n0).epsilon(1e-15));
  CHECK(d.a1 == doctest::Approx(std::sqrt(2.0 * d.n0) * (d.r - 1.0)).epsilon(1e-15));
  CHECK(d.a2 == doctest::Approx(-std::sqrt(2.0 * d.n0) * (d.r + 1.0)).epsilon(1e-15));
}

TEST_CASE("params_for reproduces the scaled pair") {
  for (double n0 : {1e4, 1e6, 1e8}) {
    for (double r : {0.0, 0.5, 1.0, 1.03}) {
      const auto d = derive(params_for(n0, r));
      CHECK(d.n0 == doctest::Approx(n0).epsilon(1e-14));
      CHECK(d.r == doctest::Approx(r).epsilon(1e-14));
    }
  }
}

TEST_CASE("a1 spans -42..42 over r = 0.97..1.03 at n0 = 1e6") {
  CHECK(derive_scaled(1e6, 0.97).a1 == doctest::Approx(-42.426406871).epsilon(1e-9));
  CHECK(derive_scaled(1e6, 1.03).a1 == doctest::Approx(42.426406871).epsilon(1e-9));
  CHECK(derive_scaled(1e6, 1.0).a1 == 0.0);
}

TEST_CASE("regime classification") {
  CHECK(classify(derive_scaled(1e6, 0.5)).tag == RegimeTag::Below);
  CHECK(classify(derive_scaled(1e6, 1.0)).tag == RegimeTag::NearThreshold);
  CHECK(classify(derive_scaled(1e6, 1.5)).tag == RegimeTag::Above);
  // band edges are inclusive on the outer side
  DerivedParams d = derive_scaled(1e6, 1.0);
  d.a1 = -6.0;
  CHECK(classify(d).tag == RegimeTag::Below);
  d.a1 = 6.0;
  CHECK(classify(d).tag == RegimeTag::Above);
  d.a1 = 5.999;
  CHECK(classify(d).tag == RegimeTag::NearThreshold);
  CHECK(classify(d, 2.0).tag == RegimeTag::Above);
  CHECK(to_string(RegimeTag::NearThreshold) == "near-threshold");
}

TEST_CASE("pump damping requirement") {
  CHECK_THROWS_AS(validate(NdpoParams{1.0, 5.0, 0.1, 1.0}), ParameterError);
  CHECK_THROWS_AS(validate(NdpoParams{-1.0, 100.0, 0.1, 1.0}), ParameterError);
  CHECK_THROWS_AS(validate(NdpoParams{1.0, 100.0, 0.0, 1.0}), ParameterError);
  CHECK_THROWS_AS(validate(NdpoParams{1.0, 100.0, 0.1, -1.0}), ParameterError);
  {
    CaptureWarnings w;
    validate(NdpoParams{1.0, 50.0, 0.1, 1.0});
    CHECK(w.messages.size() == 1);
  }
  {
    CaptureWarnings w;
    validate(NdpoParams{1.0, 100.0, 0.1, 1.0});
    CHECK(w.messages.empty());
  }
}

TEST_CASE("derive_scaled rejects invalid input") {
  CHECK_THROWS_AS(derive_scaled(0.0, 0.5), ParameterError);
  CHECK_THROWS_AS(derive_scaled(1e6, -0.1), ParameterError);
}
