#include "ndpo/cli/config.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <set>

#include "ndpo/error.hpp"
#include "ndpo/absorber.hpp"
#include "ndpo/fringe.hpp"

namespace ndpo::cli {
namespace {

using nlohmann::json;

const std::set<std::string, std::less<>> kTopKeys = {
    "gamma",    "gamma3",     "kappa", "epsilon", "n0",          "r",          "p",
    "phi_points", "phi_min",  "phi_max", "method", "band",       "seed",       "out",
    "format",   "p_list",     "r_values", "r_min", "r_max",      "r_count",    "phi_values",
    "gains",    "simulation", "dump_samples", "level", "table2_limits"};

const std::set<std::string, std::less<>> kSimulationKeys = {
    "dt",        "burn_in",     "sample_interval", "samples_per_trajectory", "n_trajectories",
    "divergence_cap", "noise_scale", "threads", "max_discard_fraction", "initial", "seed"};

[[noreturn]] void bad_key(std::string_view key, std::string_view what) {
  throw UsageError("config key '" + std::string(key) + "': " + std::string(what));
}

double get_number(const json& j, std::string_view key) {
  if (!j.is_number()) bad_key(key, "expected a number");
  return j.get<double>();
}

long long get_integer(const json& j, std::string_view key) {
  if (!j.is_number_integer() && !j.is_number_unsigned()) bad_key(key, "expected an integer");
  return j.get<long long>();
}

std::string get_string(const json& j, std::string_view key) {
  if (!j.is_string()) bad_key(key, "expected a string");
  return j.get<std::string>();
}

std::vector<double> get_numbers(const json& j, std::string_view key) {
  if (!j.is_array() || j.empty()) bad_key(key, "expected a non-empty array of numbers");
  std::vector<double> out;
  for (const auto& v : j) out.push_back(get_number(v, key));
  return out;
}

std::uint64_t get_seed(const json& j, std::string_view key) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0)) {
    bad_key(key, "expected a non-negative integer");
  }
  return j.get<std::uint64_t>();
}

void parse_simulation(const json& j, SimConfig& sim) {
  if (!j.is_object()) bad_key("simulation", "expected an object");
  for (const auto& [key, value] : j.items()) {
    const std::string full = "simulation." + key;
    if (!kSimulationKeys.contains(key)) bad_key(full, "unknown key");
    if (key == "dt") sim.dt = get_number(value, full);
    else if (key == "burn_in") sim.burn_in = get_number(value, full);
    else if (key == "sample_interval") sim.sample_interval = get_number(value, full);
    else if (key == "samples_per_trajectory") sim.samples_per_trajectory = static_cast<int>(get_integer(value, full));
    else if (key == "n_trajectories") sim.n_trajectories = static_cast<int>(get_integer(value, full));
    else if (key == "divergence_cap") sim.divergence_cap = get_number(value, full);
    else if (key == "noise_scale") sim.noise_scale = get_number(value, full);
    else if (key == "threads") {
      const auto t = get_integer(value, full);
      if (t < 0) bad_key(full, "must be >= 0");
      sim.threads = static_cast<unsigned>(t);
    } else if (key == "max_discard_fraction") sim.max_discard_fraction = get_number(value, full);
    else if (key == "seed") sim.seed = get_seed(value, full);
    else if (key == "initial") {
      const auto name = get_string(value, full);
      if (name == "auto") sim.initial = InitialCondition::Auto;
      else if (name == "vacuum") sim.initial = InitialCondition::Vacuum;
      else if (name == "fixed_point") sim.initial = InitialCondition::FixedPoint;
      else bad_key(full, "expected auto, vacuum or fixed_point");
    }
  }
  try {
    sim.validate();
  } catch (const ParameterError& e) {
    bad_key("simulation", e.what());
  }
}

}  // namespace

std::string_view to_string(Method m) {
  switch (m) {
    case Method::Analytic: return "analytic";
    case Method::Moments: return "moments";
    case Method::Quadrature: return "quadrature";
    case Method::MonteCarlo: return "montecarlo";
    case Method::Auto: return "auto";
  }
  return "?";
}

Method parse_method(std::string_view name) {
  for (Method m : {Method::Analytic, Method::Moments, Method::Quadrature, Method::MonteCarlo, Method::Auto}) {
    if (name == to_string(m)) return m;
  }
  bad_key("method", "expected one of analytic, moments, quadrature, montecarlo, auto");
}

DerivedParams RunConfig::derived() const {
  if (physical) {
    validate(*physical);
    return ndpo::derive(*physical);
  }
  return derive_scaled(n0, r);
}

std::vector<double> RunConfig::phi_grid() const { return phase_grid(phi_points, phi_min, phi_max); }

RunConfig parse_config(const json& j) {
  if (!j.is_object()) throw UsageError("config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (!kTopKeys.contains(key)) bad_key(key, "unknown key");
  }
  RunConfig c;
  const bool has_physical = j.contains("kappa") || j.contains("epsilon");
  const bool has_scaled = j.contains("n0") || j.contains("r");
  if (has_physical && has_scaled) {
    bad_key(j.contains("n0") ? "n0" : "r", "give either physical rates (kappa, epsilon) or the scaled pair (n0, r)");
  }
  if (has_physical) {
    NdpoParams ph;
    if (!j.contains("kappa")) bad_key("kappa", "required together with epsilon");
    if (!j.contains("epsilon")) bad_key("epsilon", "required together with kappa");
    ph.kappa = get_number(j["kappa"], "kappa");
    ph.epsilon = get_number(j["epsilon"], "epsilon");
    if (j.contains("gamma")) ph.gamma = get_number(j["gamma"], "gamma");
    if (j.contains("gamma3")) ph.gamma3 = get_number(j["gamma3"], "gamma3");
    try {
      validate(ph);
    } catch (const ParameterError& e) {
      bad_key("kappa", e.what());
    }
    c.physical = ph;
  } else {
    if (j.contains("gamma")) bad_key("gamma", "only meaningful together with kappa and epsilon");
    if (j.contains("gamma3")) bad_key("gamma3", "only meaningful together with kappa and epsilon");
    if (j.contains("n0")) c.n0 = get_number(j["n0"], "n0");
    if (j.contains("r")) c.r = get_number(j["r"], "r");
    if (!(c.n0 > 0.0)) bad_key("n0", "must be > 0");
    if (!(c.r >= 0.0)) bad_key("r", "must be >= 0");
  }

  if (j.contains("p")) {
    const auto p = get_integer(j["p"], "p");
    if (p < 1 || p > kMaxAbsorberOrder) bad_key("p", "must lie in 1..12");
    c.p = static_cast<int>(p);
  }
  if (j.contains("phi_points")) {
    const auto n = get_integer(j["phi_points"], "phi_points");
    if (n < 3) bad_key("phi_points", "must be >= 3");
    c.phi_points = static_cast<std::size_t>(n);
  }
  if (j.contains("phi_min")) c.phi_min = get_number(j["phi_min"], "phi_min");
  if (j.contains("phi_max")) c.phi_max = get_number(j["phi_max"], "phi_max");
  if (!(c.phi_max > c.phi_min)) bad_key("phi_max", "must exceed phi_min");
  if (j.contains("method")) c.method = parse_method(get_string(j["method"], "method"));
  if (j.contains("band")) {
    c.band = get_number(j["band"], "band");
    if (!(c.band > 0.0)) bad_key("band", "must be > 0");
  }
  if (j.contains("out")) c.out = get_string(j["out"], "out");
  if (j.contains("format")) {
    const auto f = get_string(j["format"], "format");
    if (f == "csv") c.format = OutputFormat::Csv;
    else if (f == "json") c.format = OutputFormat::Json;
    else bad_key("format", "expected csv or json");
  }
  if (j.contains("p_list")) {
    c.p_list.clear();
    for (double v : get_numbers(j["p_list"], "p_list")) {
      if (v != std::floor(v) || v < 1 || v > kMaxAbsorberOrder) bad_key("p_list", "entries must be integers in 1..12");
      c.p_list.push_back(static_cast<int>(v));
    }
  }
  const bool has_range = j.contains("r_min") || j.contains("r_max") || j.contains("r_count");
  if (has_range && j.contains("r_values")) bad_key("r_values", "give either r_values or r_min/r_max/r_count");
  if (j.contains("r_values")) c.r_values = get_numbers(j["r_values"], "r_values");
  if (has_range) {
    for (const char* k : {"r_min", "r_max", "r_count"}) {
      if (!j.contains(k)) bad_key(k, "r_min, r_max and r_count go together");
    }
    const double lo = get_number(j["r_min"], "r_min");
    const double hi = get_number(j["r_max"], "r_max");
    const auto n = get_integer(j["r_count"], "r_count");
    if (n < 2) bad_key("r_count", "must be >= 2");
    if (!(hi > lo)) bad_key("r_max", "must exceed r_min");
    c.r_values.clear();
    for (long long i = 0; i < n; ++i) c.r_values.push_back(lo + (hi - lo) * static_cast<double>(i) / (n - 1));
  }
  for (double r : c.r_values) {
    if (!(r >= 0.0)) bad_key("r_values", "entries must be >= 0");
  }
  if (j.contains("phi_values")) c.phi_values = get_numbers(j["phi_values"], "phi_values");
  if (j.contains("gains")) {
    c.gains = get_numbers(j["gains"], "gains");
    for (double g : c.gains) {
      if (!(g >= 0.0)) bad_key("gains", "entries must be >= 0");
    }
  }
  if (j.contains("simulation")) parse_simulation(j["simulation"], c.simulation);
  if (j.contains("seed")) c.simulation.seed = get_seed(j["seed"], "seed");
  if (j.contains("dump_samples")) c.dump_samples = get_string(j["dump_samples"], "dump_samples");
  if (j.contains("level")) {
    const auto level = get_string(j["level"], "level");
    if (level == "fast") c.level = VerifyLevel::Fast;
    else if (level == "full") c.level = VerifyLevel::Full;
    else bad_key("level", "expected fast or full");
  }
  if (j.contains("table2_limits")) {
    const auto& arr = j["table2_limits"];
    if (!arr.is_array() || arr.size() != 6) bad_key("table2_limits", "expected an array of 6 entries (null for p = 1)");
    for (std::size_t i = 0; i < 6; ++i) {
      c.table2_limits[i] = arr[i].is_null() ? std::numeric_limits<double>::quiet_NaN() : get_number(arr[i], "table2_limits");
    }
  }
  return c;
}

json read_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw UsageError("config file " + path.string() + ": " + e.what());
  }
}

json describe(const DerivedParams& d) {
  return {{"n0", d.n0}, {"r", d.r}, {"sigma", d.sigma}, {"a1", d.a1}, {"a2", d.a2}};
}

json describe(const RunConfig& c) {
  json params;
  if (c.physical) {
    params = {{"gamma", c.physical->gamma},
              {"gamma3", c.physical->gamma3},
              {"kappa", c.physical->kappa},
              {"epsilon", c.physical->epsilon}};
  } else {
    params = {{"n0", c.n0}, {"r", c.r}};
  }
  return params;
}

}  // namespace ndpo::cli
