#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "ndpo/analytic.hpp"
#include "ndpo/fringe.hpp"
#include "ndpo/langevin.hpp"
#include "ndpo/params.hpp"

namespace ndpo::cli {

enum class Method { Analytic, Moments, Quadrature, MonteCarlo, Auto };
enum class OutputFormat { Csv, Json };
enum class VerifyLevel { Fast, Full };

std::string_view to_string(Method m);
Method parse_method(std::string_view name);

struct RunConfig {
  // Source parameters: physical rates when set, otherwise the scaled pair.
  std::optional<NdpoParams> physical;
  double n0 = kDefaultN0;
  double r = 0.5;

  int p = 2;
  std::size_t phi_points = kDefaultPhasePoints;
  double phi_min = 0.0;
  double phi_max = 2.0 * std::numbers::pi;
  Method method = Method::Auto;
  double band = kDefaultBand;
  std::string out;  // empty or "-" writes to stdout
  OutputFormat format = OutputFormat::Csv;

  std::vector<int> p_list{2, 3, 4, 5, 6};
  std::vector<double> r_values{0.15, 0.5, 0.9};
  std::vector<double> phi_values{0.0, 0.5 * std::numbers::pi};
  std::vector<double> gains{0.1, 0.5, 1.0, 2.0, 3.0};

  SimConfig simulation;  // seed lives here
  std::string dump_samples;

  VerifyLevel level = VerifyLevel::Fast;
  std::array<double, 6> table2_limits = kTable2Limits;

  DerivedParams derived() const;
  std::vector<double> phi_grid() const;
};

// Builds a config from a flat JSON object. Unknown keys, wrong types and
// inconsistent parameter sources raise UsageError naming the key.
RunConfig parse_config(const nlohmann::json& j);
nlohmann::json read_config_file(const std::filesystem::path& path);

// Full parameter record for output sidecars.
nlohmann::json describe(const RunConfig& config);
nlohmann::json describe(const DerivedParams& derived);

}  // namespace ndpo::cli
