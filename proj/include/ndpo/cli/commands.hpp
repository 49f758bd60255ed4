#pragma once

#include <string>

#include "ndpo/cli/config.hpp"
#include "ndpo/fringe.hpp"
#include "ndpo/params.hpp"

namespace ndpo::cli {

struct CommandOutput {
  std::string primary;
  std::string sidecar;  // JSON metadata; empty when the command has none
};

struct FringeResult {
  FringePattern pattern;
  DerivedParams derived;
  Regime regime;
  Method method_used = Method::Analytic;
};

// Resolves auto to analytic (Below/Above) or moments (NearThreshold). An
// explicit analytic request inside the band warns and uses the side of
// threshold it is on; montecarlo belongs to the simulate command.
Method resolve_method(Method requested, const Regime& regime);

FringeResult compute_fringe(const RunConfig& config);
FringeResult compute_fringe(int p, const DerivedParams& derived, Method method, double band,
                            const std::vector<double>& grid);

// NaN when the fringe is identically zero.
double compute_visibility(int p, const DerivedParams& derived, Method method, double band,
                          const std::vector<double>& grid);

CommandOutput cmd_fringe(const RunConfig& config);
CommandOutput cmd_visibility_sweep(const RunConfig& config);
CommandOutput cmd_simulate(const RunConfig& config);
CommandOutput cmd_tables(const RunConfig& config);
CommandOutput cmd_compare_opa(const RunConfig& config);

// Writes primary to config.out (stdout when unset) and the sidecar next to it.
void emit(const CommandOutput& output, const RunConfig& config);

}  // namespace ndpo::cli
