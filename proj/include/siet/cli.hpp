#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "siet/core_model.hpp"
#include "siet/feasibility.hpp"
#include "siet/montecarlo.hpp"

// Command layer: key=value config ingestion with flag overrides, CSV and
// plot-script emission, and the Monte Carlo cross-validation report.
// Exit codes: 0 success, 2 config/validation error, 3 numerical failure,
// 4 oracle disagreement under --strict.

namespace siet::cli {

struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string scenario = "default";
    SystemParams system{1e-4, 1.0, 4.0, 0.0, 0.1, 0.3};
    std::vector<double> sinr_grid{1.0};
    std::vector<double> theta_grid{1e-3};
    bool theta_from_budget = false;  // thresholds.theta = auto
    feas::EnergyBudget budget{0.02, 1.0, 0.3};
    feas::FeasibilityConstraints constraints{0.5, 1.0, 1e-2};
    double target_eeh = 0.5;
    mc::SimConfig sim{};
    std::string out_dir = "out";
    bool strict = false;
};

using KeyValues = std::vector<std::pair<std::string, std::string>>;

// "1mW" -> 1e-3; suffixes W, mW, uW (case-insensitive), bare numbers are watts.
double parse_power(const std::string& text);

// Comma-separated list of numbers, each optionally unit-suffixed when
// power_units is set. Whitespace-only input yields an empty grid.
std::vector<double> parse_grid(const std::string& text, bool power_units);

// Flat key=value file with '#' comments and section-prefixed keys
// (system.lambda, sim.trials, ...). Unknown keys are rejected at merge.
KeyValues read_config_file(const std::string& path);

// Defaults, overlaid by the config file, overlaid by flags; the merged
// parameter set is validated before it is returned.
RunConfig merge_config(const KeyValues& file_kv, const KeyValues& flag_kv);

// Emits the effective configuration in the same key=value format the
// config file accepts, with full round-trip precision.
void write_effective_config(const RunConfig& config, std::ostream& os);

int cmd_coverage(const RunConfig& config);
int cmd_eeh(const RunConfig& config);
int cmd_montecarlo(const RunConfig& config);
int cmd_figures(const RunConfig& config, int which);
int cmd_feasibility(const RunConfig& config);

}  // namespace siet::cli
