// ndpo-litho: multi-photon absorption fringes from a degenerate parametric
// oscillator source. Exit codes: 0 ok, 2 usage, 3 numerical failure,
// 4 verification failure.

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "ndpo/cli/commands.hpp"
#include "ndpo/cli/config.hpp"
#include "ndpo/cli/output.hpp"
#include "ndpo/cli/verify.hpp"
#include "ndpo/error.hpp"
#include "ndpo/version.hpp"

namespace {

using nlohmann::json;

constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitVerify = 4;

struct Overrides {
  std::string config_path;
  std::optional<double> n0, r, gamma, gamma3, kappa, epsilon, band, phi_min, phi_max, dt, burn_in, sample_interval;
  std::optional<int> p, phi_points, trajectories, samples, threads;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> method, out, format, dump_samples, level;
  std::vector<int> p_list;
  std::vector<double> r_values, gains;
};

void add_common(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config_path, "JSON config file (command-line options override it)");
  cmd->add_option("--n0", o.n0, "threshold photon-number scale");
  cmd->add_option("--r", o.r, "pump parameter (1 at threshold)");
  cmd->add_option("--gamma", o.gamma, "signal/idler decay rate");
  cmd->add_option("--gamma3", o.gamma3, "pump decay rate");
  cmd->add_option("--kappa", o.kappa, "mode coupling");
  cmd->add_option("--epsilon", o.epsilon, "pump amplitude");
  cmd->add_option("--p", o.p, "absorber order");
  cmd->add_option("--phi-points", o.phi_points, "phase grid size");
  cmd->add_option("--phi-min", o.phi_min, "phase grid start");
  cmd->add_option("--phi-max", o.phi_max, "phase grid end (exclusive)");
  cmd->add_option("--method", o.method, "analytic|moments|quadrature|montecarlo|auto");
  cmd->add_option("--band", o.band, "near-threshold half-width in a1");
  cmd->add_option("--seed", o.seed, "Monte Carlo seed");
  cmd->add_option("--out", o.out, "output path (stdout if omitted)");
  cmd->add_option("--format", o.format, "csv|json");
  cmd->add_option("--threads", o.threads, "worker threads (0 = all cores)");
}

json to_json(const Overrides& o) {
  json j = o.config_path.empty() ? json::object() : ndpo::cli::read_config_file(o.config_path);
  if (!j.is_object()) throw ndpo::UsageError("config file must hold a JSON object");
  auto set = [&j](const char* key, const auto& value) {
    if (value) j[key] = *value;
  };
  // Scaled and physical sources exclude each other; a command-line source
  // replaces whichever one the file used.
  if (o.n0 || o.r) {
    for (const char* k : {"gamma", "gamma3", "kappa", "epsilon"}) j.erase(k);
  }
  if (o.kappa || o.epsilon) {
    for (const char* k : {"n0", "r"}) j.erase(k);
  }
  set("n0", o.n0);
  set("r", o.r);
  set("gamma", o.gamma);
  set("gamma3", o.gamma3);
  set("kappa", o.kappa);
  set("epsilon", o.epsilon);
  set("p", o.p);
  set("phi_points", o.phi_points);
  set("phi_min", o.phi_min);
  set("phi_max", o.phi_max);
  set("method", o.method);
  set("band", o.band);
  set("seed", o.seed);
  set("out", o.out);
  set("format", o.format);
  set("dump_samples", o.dump_samples);
  set("level", o.level);
  if (!o.p_list.empty()) j["p_list"] = o.p_list;
  if (!o.r_values.empty()) {
    for (const char* k : {"r_min", "r_max", "r_count"}) j.erase(k);
    j["r_values"] = o.r_values;
  }
  if (!o.gains.empty()) j["gains"] = o.gains;
  auto sim = [&j](const char* key, const auto& value) {
    if (value) j["simulation"][key] = *value;
  };
  sim("dt", o.dt);
  sim("burn_in", o.burn_in);
  sim("sample_interval", o.sample_interval);
  sim("n_trajectories", o.trajectories);
  sim("samples_per_trajectory", o.samples);
  sim("threads", o.threads);
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-photon absorption fringes from a degenerate parametric oscillator"};
  app.set_version_flag("--version", std::string(ndpo::kVersion));
  app.require_subcommand(1);
  Overrides o;

  auto* fringe = app.add_subcommand("fringe", "fringe pattern at one pump setting");
  add_common(fringe, o);
  auto* sweep = app.add_subcommand("sweep", "visibility over p and r");
  add_common(sweep, o);
  sweep->add_option("--p-list", o.p_list, "absorber orders")->delimiter(',');
  sweep->add_option("--r-values", o.r_values, "pump parameters")->delimiter(',');
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo fringe from the stochastic equations");
  add_common(simulate, o);
  simulate->add_option("--trajectories", o.trajectories, "ensemble size");
  simulate->add_option("--samples", o.samples, "samples per trajectory");
  simulate->add_option("--dt", o.dt, "time step in cavity lifetimes");
  simulate->add_option("--burn-in", o.burn_in, "discarded initial time");
  simulate->add_option("--sample-interval", o.sample_interval, "time between retained samples");
  simulate->add_option("--dump-samples", o.dump_samples, "write raw trajectory samples as CSV");
  auto* verify = app.add_subcommand("verify", "cross-check every computational path");
  add_common(verify, o);
  verify->add_option("--level", o.level, "fast|full");
  auto* tables = app.add_subcommand("tables", "explicit rate and visibility tables");
  add_common(tables, o);
  tables->add_option("--r-values", o.r_values, "pump parameters for evaluated columns")->delimiter(',');
  auto* opa = app.add_subcommand("compare-opa", "OPA vs oscillator visibilities");
  add_common(opa, o);
  opa->add_option("--p-list", o.p_list, "absorber orders")->delimiter(',');
  opa->add_option("--gains", o.gains, "single-pass gains")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    const auto config = ndpo::cli::parse_config(to_json(o));
    namespace cli = ndpo::cli;
    if (fringe->parsed()) cli::emit(cli::cmd_fringe(config), config);
    else if (sweep->parsed()) cli::emit(cli::cmd_visibility_sweep(config), config);
    else if (simulate->parsed()) cli::emit(cli::cmd_simulate(config), config);
    else if (tables->parsed()) cli::emit(cli::cmd_tables(config), config);
    else if (opa->parsed()) cli::emit(cli::cmd_compare_opa(config), config);
    else if (verify->parsed()) {
      const auto report = cli::cmd_verify(config);
      const std::string text =
          config.format == cli::OutputFormat::Json ? report.to_json().dump(2) + "\n" : report.text();
      cli::write_text(config.out, text);
      return report.passed() ? 0 : kExitVerify;
    }
  } catch (const ndpo::ConvergenceError& e) {
    std::cerr << "ndpo-litho: convergence failure: " << e.what() << " (estimate " << e.estimate() << ", error "
              << e.error_estimate() << ")\n";
    return kExitNumerical;
  } catch (const ndpo::StatisticsError& e) {
    std::cerr << "ndpo-litho: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const ndpo::Error& e) {
    std::cerr << "ndpo-litho: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "ndpo-litho: internal error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
