#include "ndpo/cli/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

#include "ndpo/analytic.hpp"
#include "ndpo/cli/output.hpp"
#include "ndpo/error.hpp"
#include "ndpo/fringe.hpp"
#include "ndpo/langevin.hpp"
#include "ndpo/moments.hpp"
#include "ndpo/opa.hpp"
#include "ndpo/oracle.hpp"

namespace ndpo::cli {
namespace {

constexpr double kPi = std::numbers::pi;

double rel_diff(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

std::vector<double> even_phases(int n) {
  std::vector<double> out;
  for (int i = 0; i < n; ++i) out.push_back(2.0 * kPi * i / n);
  return out;
}

class Runner {
 public:
  // f returns the worst deviation; thrown library errors count as failures.
  void check(std::string name, std::string description, double tolerance, const std::function<double()>& f) {
    CheckResult c{std::move(name), std::move(description), tolerance, 0.0, false};
    try {
      c.achieved = f();
      c.passed = c.achieved <= tolerance;
    } catch (const std::exception& e) {
      c.description += " [error: " + std::string(e.what()) + "]";
      c.achieved = std::numeric_limits<double>::infinity();
    }
    report.checks.push_back(std::move(c));
  }

  VerifyReport report;
};

void fast_checks(Runner& run, const RunConfig& config) {
  const std::vector<double> rs{0.15, 0.5, 0.9};

  run.check("table1_identity", "rate_below vs explicit Table I rows, p=1..6, 3 r x 25 phi", 1e-12, [&] {
    double worst = 0.0;
    for (int p = 1; p <= 6; ++p)
      for (double r : rs)
        for (double phi : even_phases(25)) worst = std::max(worst, rel_diff(rate_below(p, r, phi), table1_rate(p, r, phi)));
    return worst;
  });

  run.check("table2_limits", "closed-form visibility at r=0.999 vs tabulated limits, p=2..6", 0.01, [&] {
    double worst = 0.0;
    for (int p = 2; p <= 6; ++p) {
      worst = std::max(worst, std::abs(visibility_below_closed_form(p, 0.999).value - config.table2_limits[p - 1]));
    }
    return worst;
  });

  run.check("table2_vs_fringe", "Table II formulas vs located extrema of rate_below, p=2..6", 1e-9, [&] {
    const auto grid = phase_grid(181);
    double worst = 0.0;
    for (int p = 2; p <= 6; ++p)
      for (double r : rs) {
        const double v = visibility([p, r](double phi) { return rate_below(p, r, phi); }, grid);
        worst = std::max(worst, std::abs(v - table2_visibility(p, r)));
      }
    return worst;
  });

  run.check("moments_vs_closed_form", "Gaussian moment engine vs rate_below, p=1..6", 1e-10, [&] {
    double worst = 0.0;
    for (int p = 1; p <= 6; ++p)
      for (double r : rs) {
        const MomentEngine engine(p, derive_scaled(kDefaultN0, r), Regime{RegimeTag::Below, kDefaultBand});
        for (double phi : even_phases(12)) worst = std::max(worst, rel_diff(engine.rate(phi), rate_below(p, r, phi)));
      }
    return worst;
  });

  run.check("f_decomposition", "binomial F-moment sum vs rate_below, p=1..6", 1e-12, [&] {
    double worst = 0.0;
    for (int p = 1; p <= 6; ++p)
      for (double r : rs)
        for (double phi : even_phases(12))
          worst = std::max(worst, rel_diff(f_decomposition_rate(p, r, phi), rate_below(p, r, phi)));
    return worst;
  });

  run.check("coupled_normalization", "<1> under the coupled radial moments", 1e-10, [] {
    double worst = 0.0;
    for (double a1 : {-100.0, -20.0, -1.0, 0.0, 1.0, 20.0, 100.0}) {
      worst = std::max(worst, std::abs(coupled_moment(0, 0, a1) - 1.0));
    }
    return worst;
  });

  run.check("above_shape_invariance", "normalized asymptotic fringes at (r, n0) = (1.5, 1e6) and (3, 1e8)", 1e-12,
            [] {
              double worst = 0.0;
              const auto da = derive_scaled(1e6, 1.5);
              const auto db = derive_scaled(1e8, 3.0);
              for (int p = 1; p <= 6; ++p) {
                const double na = rate_above_asymptotic(p, da, 0.0);
                const double nb = rate_above_asymptotic(p, db, 0.0);
                for (double phi : even_phases(24)) {
                  worst = std::max(worst, std::abs(rate_above_asymptotic(p, da, phi) / na -
                                                   rate_above_asymptotic(p, db, phi) / nb));
                }
              }
              return worst;
            });

  run.check("opa_correspondence", "OPA vs NDPO visibilities at r = tanh(G), p=2..6", 1e-12, [] {
    double worst = 0.0;
    for (int p = 2; p <= 6; ++p)
      for (double G : {0.1, 1.0, 3.0})
        worst = std::max(worst, std::abs(opa_visibility(p, G) - visibility_below_closed_form(p, std::tanh(G)).value));
    return worst;
  });

  run.check("threshold_transition", "p=2 coupled-moment visibility, r=0.97..1.03 at n0=1e6: distance from 0.2 at "
            "r=1.03 (monotonicity violations add their size)", 0.01, [] {
    const auto grid = phase_grid(181);
    double prev = std::numeric_limits<double>::infinity();
    double penalty = 0.0;
    double last = 0.0;
    for (int i = 0; i <= 12; ++i) {
      const double r = 0.97 + 0.005 * i;
      const MomentEngine engine(2, derive_scaled(1e6, r), Regime{RegimeTag::NearThreshold, kDefaultBand});
      last = visibility([&engine](double phi) { return engine.shape(phi); }, grid);
      if (last > prev + 1e-12) penalty += last - prev;
      prev = last;
    }
    return std::abs(last - 0.2) + penalty;
  });
}

void full_checks(Runner& run) {
  run.check("radial_oracle", "radial_R vs adaptive quadrature, odd S<=13, 7 values of a1", 1e-8, [] {
    double worst = 0.0;
    for (double a1 : {-20.0, -5.0, -1.0, 0.0, 1.0, 5.0, 42.0})
      for (int S = 1; S <= 13; S += 2) worst = std::max(worst, std::abs(std::expm1(log_radial_R(S, a1) - quad_log_radial(S, a1))));
    return worst;
  });

  run.check("quadrature_vs_closed_form", "full-distribution quadrature vs rate_below, p=2, r=0.5, n0=1e6", 1e-3, [] {
    const auto d = derive_scaled(1e6, 0.5);
    double worst = 0.0;
    for (double phi : {0.0, kPi / 4, kPi / 2}) worst = std::max(worst, rel_diff(rate_quadrature(2, d, phi), rate_below(2, 0.5, phi)));
    return worst;
  });

  run.check("quadrature_p1_flat", "p=1 quadrature fringe spread, r=1.01, n0=1e6", 1e-6, [] {
    const QuadratureEngine engine(1, derive_scaled(1e6, 1.01));
    double hi = -1e300, lo = 1e300;
    for (double phi : even_phases(36)) {
      hi = std::max(hi, engine.shape(phi));
      lo = std::min(lo, engine.shape(phi));
    }
    return (hi - lo) / hi;
  });

  run.check("montecarlo_p1", "seeded Monte Carlo p=1 rate at r=0.5, n0=1e6 vs 1/3, in standard errors", 3.0, [] {
    SimConfig sim;
    sim.n_trajectories = 2000;
    sim.seed = 20240611;
    const auto samples = simulate_steady_state(derive_scaled(1e6, 0.5), sim);
    const auto e = estimate_rate(1, 0.0, samples);
    return std::abs(e.mean - 1.0 / 3.0) / e.std_error;
  });
}

}  // namespace

bool VerifyReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

std::string VerifyReport::text() const {
  std::ostringstream out;
  for (const auto& c : checks) {
    out << (c.passed ? "PASS " : "FAIL ") << c.name << "  achieved=" << format_double(c.achieved)
        << "  tolerance=" << format_double(c.tolerance) << "  (" << c.description << ")\n";
  }
  out << (passed() ? "all checks passed\n" : "verification FAILED\n");
  return out.str();
}

nlohmann::json VerifyReport::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& c : checks) {
    arr.push_back({{"name", c.name},
                   {"description", c.description},
                   {"tolerance", c.tolerance},
                   {"achieved", std::isfinite(c.achieved) ? nlohmann::json(c.achieved) : nlohmann::json(nullptr)},
                   {"passed", c.passed}});
  }
  return {{"passed", passed()}, {"checks", arr}};
}

VerifyReport cmd_verify(const RunConfig& config) {
  Runner run;
  fast_checks(run, config);
  if (config.level == VerifyLevel::Full) full_checks(run);
  return std::move(run.report);
}

}  // namespace ndpo::cli
