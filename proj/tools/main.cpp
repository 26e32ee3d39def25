#include <exception>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "siet/cli.hpp"
#include "siet/numerics.hpp"

namespace {

struct FlagSpec {
    const char* flag;
    const char* key;
    const char* help;
};

constexpr FlagSpec kOverrides[] = {
    {"--lambda", "system.lambda", "base-station density [BS/m^2]"},
    {"--power", "system.power", "transmit power (accepts W/mW/uW suffix)"},
    {"--alpha", "system.alpha", "path-loss exponent (> 2)"},
    {"--sigma2", "system.sigma2", "noise power (accepts W/mW/uW suffix)"},
    {"--rho", "system.rho", "power-splitting factor in [0,1]"},
    {"--epsilon", "system.epsilon", "user-active probability in [0,1]"},
    {"--T", "thresholds.T", "SINR threshold grid, comma-separated"},
    {"--theta", "thresholds.theta", "harvesting threshold grid (units ok) or 'auto'"},
    {"--pm", "budget.pm", "maintenance power (units ok)"},
    {"--zeta", "budget.zeta", "availability factor"},
    {"--eta", "budget.eta", "converter efficiency in (0,1]"},
    {"--coverage-floor", "constraints.coverage_floor", "minimum coverage probability"},
    {"--power-max", "constraints.power_max", "transmit power cap (units ok)"},
    {"--density-max", "constraints.density_max", "density cap [BS/m^2]"},
    {"--target", "feasibility.target", "target EEH probability in (0,1)"},
    {"--trials", "sim.trials", "Monte Carlo trials"},
    {"--seed", "sim.seed", "Monte Carlo seed"},
    {"--window-radius", "sim.window_radius", "simulation window [m] (0 = auto)"},
    {"--tail-tol", "sim.tail_tolerance", "window tail tolerance (units ok)"},
    {"--scenario", "scenario", "scenario name recorded in reports"},
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"siet: coverage and RF energy-harvesting feasibility for PPP cellular networks"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path, dump_path, out_dir;
    bool strict = false;
    app.add_option("--config", config_path, "key=value configuration file");
    app.add_option("--out", out_dir, "output directory for CSV and plot files");
    app.add_option("--dump-config", dump_path, "write the merged effective config here");
    app.add_flag("--strict", strict, "exit 4 when Monte Carlo disagrees with analytic values");

    std::string values[std::size(kOverrides)];
    CLI::Option* options[std::size(kOverrides)];
    for (std::size_t i = 0; i < std::size(kOverrides); ++i) {
        options[i] = app.add_option(kOverrides[i].flag, values[i], kOverrides[i].help);
    }

    auto* coverage = app.add_subcommand("coverage", "coverage probability over a threshold grid");
    auto* eeh = app.add_subcommand("eeh", "EEH probability over a harvesting-threshold grid");
    auto* montecarlo =
        app.add_subcommand("montecarlo", "cross-validate analytic values against simulation");
    auto* figures = app.add_subcommand("figures", "emit sweep CSV and plot script");
    auto* feasibility =
        app.add_subcommand("feasibility", "per-level deployment feasibility report");
    int which = 0;
    figures->add_option("which", which, "figure number (2, 3 or 4)")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        siet::cli::KeyValues file_kv;
        if (!config_path.empty()) file_kv = siet::cli::read_config_file(config_path);

        siet::cli::KeyValues flag_kv;
        for (std::size_t i = 0; i < std::size(kOverrides); ++i) {
            if (options[i]->count() > 0) flag_kv.emplace_back(kOverrides[i].key, values[i]);
        }
        if (!out_dir.empty()) flag_kv.emplace_back("out.dir", out_dir);

        siet::cli::RunConfig cfg = siet::cli::merge_config(file_kv, flag_kv);
        cfg.strict = strict;

        if (!dump_path.empty()) {
            std::ofstream os(dump_path);
            if (!os) throw std::runtime_error("cannot write " + dump_path);
            siet::cli::write_effective_config(cfg, os);
        }

        if (*coverage) return siet::cli::cmd_coverage(cfg);
        if (*eeh) return siet::cli::cmd_eeh(cfg);
        if (*montecarlo) return siet::cli::cmd_montecarlo(cfg);
        if (*figures) return siet::cli::cmd_figures(cfg, which);
        if (*feasibility) return siet::cli::cmd_feasibility(cfg);
        std::cerr << "error: no subcommand selected\n";
        return 2;
    } catch (const siet::cli::config_error& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const siet::num::numerical_error& e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
}
