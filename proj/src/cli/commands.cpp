#include "ndpo/cli/commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <limits>
#include <mutex>
#include <thread>

#include "ndpo/analytic.hpp"
#include "ndpo/cli/output.hpp"
#include "ndpo/diagnostics.hpp"
#include "ndpo/error.hpp"
#include "ndpo/langevin.hpp"
#include "ndpo/moments.hpp"
#include "ndpo/opa.hpp"
#include "ndpo/oracle.hpp"
#include "ndpo/version.hpp"

namespace ndpo::cli {
namespace {

using nlohmann::json;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kBelowLimit = 1.0 - 1e-6;

json regime_json(const Regime& regime) {
  return {{"tag", std::string(to_string(regime.tag))}, {"band", regime.a1_band}};
}

json nullable(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

// Runs body(i) for i in [0, n) on up to `threads` workers. Results must be
// written into per-index slots so the outcome does not depend on scheduling.
template <class Body>
void parallel_for(std::size_t n, unsigned threads, Body body) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::mutex mutex;
  std::exception_ptr error;
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i; (i = next.fetch_add(1)) < n;) {
          try {
            body(i);
          } catch (...) {
            std::lock_guard lock(mutex);
            if (!error) error = std::current_exception();
            next.store(n);
          }
        }
      });
    }
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace

Method resolve_method(Method requested, const Regime& regime) {
  if (requested == Method::Auto) {
    return regime.tag == RegimeTag::NearThreshold ? Method::Moments : Method::Analytic;
  }
  return requested;
}

FringeResult compute_fringe(int p, const DerivedParams& d, Method method, double band,
                            const std::vector<double>& grid) {
  FringeResult result;
  result.derived = d;
  result.regime = classify(d, band);
  result.method_used = resolve_method(method, result.regime);
  const RegimeTag tag = result.regime.tag;

  switch (result.method_used) {
    case Method::Analytic: {
      bool below = tag == RegimeTag::Below;
      if (tag == RegimeTag::NearThreshold) {
        if (d.r < kBelowLimit) {
          below = true;
        } else if (d.a1 <= 0.0) {
          throw DomainError("analytic method has no closed form at threshold; use moments");
        }
        warn("analytic method inside the near-threshold band (|a1| < " + format_double(band) +
             "); the closed form is outside its validity");
      }
      if (below) {
        const double r = d.r;
        result.pattern = sample_fringe(p, [p, r](double phi) { return rate_below(p, r, phi); }, 0.0, grid, tag);
      } else {
        result.pattern = sample_fringe(p, [p](double phi) { return above_threshold_shape(p, phi); },
                                       log_above_threshold_prefactor(p, d), grid, tag);
      }
      break;
    }
    case Method::Moments: {
      const MomentEngine engine(p, d, Regime{RegimeTag::NearThreshold, band});
      result.pattern = sample_fringe(p, [&engine](double phi) { return engine.shape(phi); }, engine.log_prefactor(),
                                     grid, tag);
      break;
    }
    case Method::Quadrature: {
      const QuadratureEngine engine(p, d);
      const double log_scale = p * std::log(d.r * std::sqrt(2.0 * d.n0));
      result.pattern =
          sample_fringe(p, [&engine](double phi) { return engine.shape(phi); }, log_scale, grid, tag);
      break;
    }
    case Method::MonteCarlo:
      throw UsageError("method 'montecarlo' is served by the simulate command");
    case Method::Auto:
      break;
  }
  return result;
}

FringeResult compute_fringe(const RunConfig& c) {
  return compute_fringe(c.p, c.derived(), c.method, c.band, c.phi_grid());
}

double compute_visibility(int p, const DerivedParams& d, Method method, double band,
                          const std::vector<double>& grid) {
  const Regime regime = classify(d, band);
  if (resolve_method(method, regime) == Method::Analytic && regime.tag == RegimeTag::Below) {
    return visibility_below_closed_form(p, d.r).value;
  }
  const auto result = compute_fringe(p, d, method, band, grid);
  return result.pattern.visibility_defined ? result.pattern.visibility : kNaN;
}

CommandOutput cmd_fringe(const RunConfig& c) {
  const FringeResult f = compute_fringe(c);
  const auto& pat = f.pattern;
  json meta = {{"params", describe(c)},
               {"derived", describe(f.derived)},
               {"regime", regime_json(f.regime)},
               {"p", c.p},
               {"phi_points", c.phi_points},
               {"phi_min", c.phi_min},
               {"phi_max", c.phi_max},
               {"visibility", nullable(pat.visibility)},
               {"visibility_defined", pat.visibility_defined},
               {"rate_max", pat.rate_max},
               {"rate_min", pat.rate_min},
               {"method", std::string(to_string(f.method_used))},
               {"version", std::string(kVersion)}};
  CommandOutput out;
  if (c.format == OutputFormat::Json) {
    json body = meta;
    body["phi"] = pat.phi_grid;
    body["rate"] = pat.rates;
    json logs = json::array();
    for (double v : pat.log_rates) logs.push_back(nullable(v));
    body["log_rate"] = logs;
    body["normalized"] = pat.normalized;
    out.primary = body.dump(2) + "\n";
    return out;
  }
  CsvWriter csv({"phi", "rate", "log_rate", "normalized"});
  for (std::size_t i = 0; i < pat.phi_grid.size(); ++i) {
    csv.cell(pat.phi_grid[i]).cell(pat.rates[i]).cell(pat.log_rates[i]).cell(pat.normalized[i]).end_row();
  }
  out.primary = csv.str();
  out.sidecar = meta.dump(2) + "\n";
  return out;
}

CommandOutput cmd_visibility_sweep(const RunConfig& c) {
  const auto grid = c.phi_grid();
  struct Row {
    int p;
    double r;
    double visibility;
    DerivedParams derived;
  };
  std::vector<Row> rows;
  for (int p : c.p_list) {
    for (double r : c.r_values) rows.push_back({p, r, kNaN, derive_scaled(c.physical ? c.derived().n0 : c.n0, r)});
  }
  parallel_for(rows.size(), c.simulation.threads, [&](std::size_t i) {
    rows[i].visibility = compute_visibility(rows[i].p, rows[i].derived, c.method, c.band, grid);
  });

  CommandOutput out;
  const double n0 = rows.empty() ? c.n0 : rows.front().derived.n0;
  if (c.format == OutputFormat::Json) {
    json arr = json::array();
    for (const auto& row : rows) arr.push_back({{"p", row.p}, {"r", row.r}, {"visibility", nullable(row.visibility)}});
    out.primary = json{{"n0", n0},
                       {"method", std::string(to_string(c.method))},
                       {"band", c.band},
                       {"version", std::string(kVersion)},
                       {"rows", arr}}
                      .dump(2) +
                  "\n";
    return out;
  }
  CsvWriter csv({"p", "r", "visibility"});
  for (const auto& row : rows) csv.cell(static_cast<long long>(row.p)).cell(row.r).cell(row.visibility).end_row();
  out.primary = csv.str();
  out.sidecar = json{{"n0", n0},
                     {"method", std::string(to_string(c.method))},
                     {"band", c.band},
                     {"phi_points", c.phi_points},
                     {"version", std::string(kVersion)}}
                    .dump(2) +
                "\n";
  return out;
}

CommandOutput cmd_simulate(const RunConfig& c) {
  const DerivedParams d = c.derived();
  const SampleSet samples = simulate_steady_state(d, c.simulation);
  if (!c.dump_samples.empty()) {
    std::ofstream dump(c.dump_samples, std::ios::binary);
    if (!dump) throw UsageError("cannot open sample dump " + c.dump_samples);
    write_samples_csv(dump, samples);
  }
  const auto grid = c.phi_grid();
  std::vector<EnsembleEstimate> estimates(grid.size());
  parallel_for(grid.size(), c.simulation.threads,
               [&](std::size_t i) { estimates[i] = estimate_rate(c.p, grid[i], samples); });

  double hi = -std::numeric_limits<double>::infinity();
  double lo = std::numeric_limits<double>::infinity();
  bool imag_ok = true;
  for (const auto& e : estimates) {
    hi = std::max(hi, e.mean);
    lo = std::min(lo, e.mean);
    imag_ok = imag_ok && e.imag_consistent;
  }
  const double vis = hi + lo > 0.0 ? (hi - lo) / (hi + lo) : kNaN;
  const auto& sim = c.simulation;
  json meta = {{"params", describe(c)},
               {"derived", describe(d)},
               {"regime", regime_json(classify(d, c.band))},
               {"p", c.p},
               {"method", "montecarlo"},
               {"simulation",
                {{"dt", sim.dt},
                 {"burn_in", sim.burn_in},
                 {"sample_interval", sim.sample_interval},
                 {"samples_per_trajectory", sim.samples_per_trajectory},
                 {"n_trajectories", sim.n_trajectories},
                 {"seed", sim.seed},
                 {"divergence_cap", sim.divergence_cap > 0.0 ? sim.divergence_cap : default_divergence_cap(d)},
                 {"noise_scale", sim.noise_scale}}},
               {"discarded", samples.discarded},
               {"n_samples", samples.states.size()},
               {"grid_visibility", nullable(vis)},
               {"imaginary_parts_consistent", imag_ok},
               {"version", std::string(kVersion)}};
  CommandOutput out;
  if (c.format == OutputFormat::Json) {
    json rows = json::array();
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const auto& e = estimates[i];
      rows.push_back({{"phi", grid[i]},
                      {"rate", e.mean},
                      {"stderr", e.std_error},
                      {"imag", e.imag_mean},
                      {"imag_stderr", e.imag_std_error},
                      {"n_samples", e.n_samples}});
    }
    meta["rows"] = rows;
    out.primary = meta.dump(2) + "\n";
    return out;
  }
  CsvWriter csv({"phi", "rate", "stderr", "imag", "imag_stderr", "n_samples"});
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto& e = estimates[i];
    csv.cell(grid[i])
        .cell(e.mean)
        .cell(e.std_error)
        .cell(e.imag_mean)
        .cell(e.imag_std_error)
        .cell(static_cast<long long>(e.n_samples))
        .end_row();
  }
  out.primary = csv.str();
  out.sidecar = meta.dump(2) + "\n";
  return out;
}

CommandOutput cmd_tables(const RunConfig& c) {
  for (double r : c.r_values) {
    if (r >= 1.0) throw UsageError("config key 'r_values': table rows hold below threshold only (r < 1)");
  }
  CommandOutput out;
  if (c.format == OutputFormat::Json) {
    json t1 = json::array();
    json t2 = json::array();
    for (int p = 1; p <= 6; ++p) {
      json values = json::array();
      for (double r : c.r_values) {
        for (double phi : c.phi_values) values.push_back({{"r", r}, {"phi", phi}, {"rate", table1_rate(p, r, phi)}});
      }
      t1.push_back({{"p", p}, {"expression", std::string(table1_expression(p))}, {"values", values}});
      json vis = json::array();
      for (double r : c.r_values) vis.push_back({{"r", r}, {"visibility", table2_visibility(p, r)}});
      t2.push_back({{"p", p},
                    {"expression", std::string(table2_expression(p))},
                    {"limit", nullable(kTable2Limits[p - 1])},
                    {"values", vis}});
    }
    out.primary = json{{"table1", t1}, {"table2", t2}, {"version", std::string(kVersion)}}.dump(2) + "\n";
    return out;
  }
  CsvWriter csv({"table", "p", "r", "phi", "value", "expression"});
  for (int p = 1; p <= 6; ++p) {
    for (double r : c.r_values) {
      for (double phi : c.phi_values) {
        csv.cell("I").cell(static_cast<long long>(p)).cell(r).cell(phi).cell(table1_rate(p, r, phi));
        csv.cell(table1_expression(p)).end_row();
      }
    }
  }
  for (int p = 1; p <= 6; ++p) {
    for (double r : c.r_values) {
      csv.cell("II").cell(static_cast<long long>(p)).cell(r).cell("").cell(table2_visibility(p, r));
      csv.cell(table2_expression(p)).end_row();
    }
    csv.cell("II-limit").cell(static_cast<long long>(p)).cell(1.0).cell("").cell(kTable2Limits[p - 1]);
    csv.cell(table2_expression(p)).end_row();
  }
  out.primary = csv.str();
  return out;
}

CommandOutput cmd_compare_opa(const RunConfig& c) {
  CsvWriter csv({"p", "G", "r", "opa_visibility", "ndpo_visibility"});
  json rows = json::array();
  for (int p : c.p_list) {
    for (double G : c.gains) {
      const double r = r_from_gain(G);
      const double opa = opa_visibility(p, G);
      const double ndpo = visibility_below_closed_form(p, r).value;
      csv.cell(static_cast<long long>(p)).cell(G).cell(r).cell(opa).cell(ndpo).end_row();
      rows.push_back({{"p", p}, {"G", G}, {"r", r}, {"opa_visibility", opa}, {"ndpo_visibility", ndpo}});
    }
  }
  CommandOutput out;
  out.primary = c.format == OutputFormat::Json ? json{{"rows", rows}, {"version", std::string(kVersion)}}.dump(2) + "\n"
                                               : csv.str();
  return out;
}

void emit(const CommandOutput& output, const RunConfig& c) {
  write_text(c.out, output.primary);
  if (!output.sidecar.empty() && !is_stdout(c.out)) write_text(sidecar_path(c.out), output.sidecar);
}

}  // namespace ndpo::cli
