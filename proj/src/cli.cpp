#include "siet/cli.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include "siet/analytic.hpp"
#include "siet/numerics.hpp"

namespace siet::cli {

namespace fs = std::filesystem;

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string fmt_full(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& text) {
    const std::string t = trim(text);
    if (t.empty()) throw config_error("empty numeric value");
    char* end = nullptr;
    const double v = std::strtod(t.c_str(), &end);
    if (end != t.c_str() + t.size()) {
        throw config_error("malformed number: '" + text + "'");
    }
    return v;
}

std::uint64_t parse_count(const std::string& text) {
    const double v = parse_double(text);
    if (v < 0.0 || v != std::floor(v) || v > 1.8e19) {
        throw config_error("expected a nonnegative integer: '" + text + "'");
    }
    return static_cast<std::uint64_t>(v);
}

std::ofstream open_output(const fs::path& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open output file: " + path.string());
    return os;
}

fs::path prepare_out_dir(const RunConfig& config) {
    fs::path dir(config.out_dir);
    fs::create_directories(dir);
    return dir;
}

void write_sweep_csv(const feas::SweepTable& table, std::ostream& os) {
    os << table.axis_name;
    for (const auto& [name, _] : table.series) os << ',' << name;
    os << '\n';
    for (std::size_t i = 0; i < table.axis_values.size(); ++i) {
        os << fmt(table.axis_values[i]);
        for (const auto& [_, column] : table.series) os << ',' << fmt(column[i]);
        os << '\n';
    }
}

void write_plot_script(const feas::SweepTable& table, const std::string& csv_name,
                       const std::string& xlabel, const std::string& ylabel,
                       bool log_x, bool log_y, std::ostream& os) {
    os << "# gnuplot script; expects " << csv_name << " next to it\n";
    for (const auto& [key, value] : table.metadata) {
        os << "# " << key << " = " << value << '\n';
    }
    os << "set datafile separator ','\n";
    os << "set grid\n";
    os << "set key left top\n";
    if (log_x) os << "set logscale x\n";
    if (log_y) os << "set logscale y\n";
    os << "set xlabel '" << xlabel << "'\n";
    os << "set ylabel '" << ylabel << "'\n";
    os << "plot ";
    for (std::size_t i = 0; i < table.series.size(); ++i) {
        if (i > 0) os << ", \\\n     ";
        os << "'" << csv_name << "' using 1:" << (i + 2) << " with lines lw 2 title '"
           << table.series[i].first << "'";
    }
    os << '\n';
}

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i) out[i] = lo + (hi - lo) * i / (n - 1);
    return out;
}

std::vector<double> logspace(double lo, double hi, int n) {
    std::vector<double> out(n);
    const double llo = std::log10(lo), lhi = std::log10(hi);
    for (int i = 0; i < n; ++i) out[i] = std::pow(10.0, llo + (lhi - llo) * i / (n - 1));
    return out;
}

void apply_key(RunConfig& cfg, const std::string& key, const std::string& value) {
    if (key == "scenario") {
        cfg.scenario = trim(value);
    } else if (key == "system.lambda") {
        cfg.system.lambda = parse_double(value);
    } else if (key == "system.power") {
        cfg.system.power = parse_power(value);
    } else if (key == "system.alpha") {
        cfg.system.alpha = parse_double(value);
    } else if (key == "system.sigma2") {
        cfg.system.noise = parse_power(value);
    } else if (key == "system.rho") {
        cfg.system.rho = parse_double(value);
    } else if (key == "system.epsilon") {
        cfg.system.epsilon = parse_double(value);
    } else if (key == "thresholds.T") {
        cfg.sinr_grid = parse_grid(value, false);
    } else if (key == "thresholds.theta") {
        if (trim(value) == "auto") {
            cfg.theta_from_budget = true;
        } else {
            cfg.theta_from_budget = false;
            cfg.theta_grid = parse_grid(value, true);
        }
    } else if (key == "budget.pm") {
        cfg.budget.maintenance_power = parse_power(value);
    } else if (key == "budget.zeta") {
        cfg.budget.availability_factor = parse_double(value);
    } else if (key == "budget.eta") {
        cfg.budget.converter_efficiency = parse_double(value);
    } else if (key == "constraints.coverage_floor") {
        cfg.constraints.coverage_floor = parse_double(value);
    } else if (key == "constraints.power_max") {
        cfg.constraints.power_max = parse_power(value);
    } else if (key == "constraints.density_max") {
        cfg.constraints.density_max = parse_double(value);
    } else if (key == "feasibility.target") {
        cfg.target_eeh = parse_double(value);
    } else if (key == "sim.trials") {
        cfg.sim.trials = parse_count(value);
    } else if (key == "sim.seed") {
        cfg.sim.seed = parse_count(value);
    } else if (key == "sim.window_radius") {
        cfg.sim.window_radius = parse_double(value);
    } else if (key == "sim.tail_tolerance") {
        cfg.sim.tail_tolerance = parse_power(value);
    } else if (key == "out.dir") {
        cfg.out_dir = trim(value);
    } else {
        throw config_error("unknown config key: '" + key + "'");
    }
}

}  // namespace

double parse_power(const std::string& text) {
    std::string t = trim(text);
    if (t.empty()) throw config_error("empty power value");

    double scale = 1.0;
    auto lower = [](char c) { return static_cast<char>(std::tolower(c)); };
    if (t.size() >= 2 && lower(t[t.size() - 2]) == 'm' && lower(t.back()) == 'w') {
        scale = 1e-3;
        t = trim(t.substr(0, t.size() - 2));
    } else if (t.size() >= 2 && lower(t[t.size() - 2]) == 'u' && lower(t.back()) == 'w') {
        scale = 1e-6;
        t = trim(t.substr(0, t.size() - 2));
    } else if (!t.empty() && lower(t.back()) == 'w') {
        t = trim(t.substr(0, t.size() - 1));
    }
    return parse_double(t) * scale;
}

std::vector<double> parse_grid(const std::string& text, bool power_units) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        out.push_back(power_units ? parse_power(item) : parse_double(item));
    }
    return out;
}

KeyValues read_config_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw config_error("cannot read config file: " + path);
    KeyValues kv;
    std::string line;
    int line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw config_error(path + ":" + std::to_string(line_no) + ": expected key=value");
        }
        kv.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return kv;
}

RunConfig merge_config(const KeyValues& file_kv, const KeyValues& flag_kv) {
    RunConfig cfg;
    for (const auto& [key, value] : file_kv) apply_key(cfg, key, value);
    for (const auto& [key, value] : flag_kv) apply_key(cfg, key, value);

    try {
        validate(cfg.system);
        feas::validate(cfg.budget);
        feas::validate(cfg.constraints);
    } catch (const std::invalid_argument& e) {
        throw config_error(e.what());
    }
    if (cfg.sim.trials < 1) throw config_error("sim.trials must be >= 1");
    if (!(cfg.sim.tail_tolerance > 0.0)) throw config_error("sim.tail_tolerance must be positive");
    if (cfg.sim.window_radius < 0.0) throw config_error("sim.window_radius must be >= 0");
    if (!(cfg.target_eeh > 0.0 && cfg.target_eeh < 1.0)) {
        throw config_error("feasibility.target must lie in (0,1)");
    }
    if (cfg.theta_from_budget) {
        cfg.theta_grid = {feas::harvest_threshold(cfg.budget)};
    }
    return cfg;
}

void write_effective_config(const RunConfig& cfg, std::ostream& os) {
    auto grid = [](const std::vector<double>& values) {
        std::string joined;
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (i > 0) joined += ',';
            joined += fmt_full(values[i]);
        }
        return joined;
    };
    os << "scenario = " << cfg.scenario << '\n';
    os << "system.lambda = " << fmt_full(cfg.system.lambda) << '\n';
    os << "system.power = " << fmt_full(cfg.system.power) << '\n';
    os << "system.alpha = " << fmt_full(cfg.system.alpha) << '\n';
    os << "system.sigma2 = " << fmt_full(cfg.system.noise) << '\n';
    os << "system.rho = " << fmt_full(cfg.system.rho) << '\n';
    os << "system.epsilon = " << fmt_full(cfg.system.epsilon) << '\n';
    os << "thresholds.T = " << grid(cfg.sinr_grid) << '\n';
    os << "thresholds.theta = " << grid(cfg.theta_grid) << '\n';
    os << "budget.pm = " << fmt_full(cfg.budget.maintenance_power) << '\n';
    os << "budget.zeta = " << fmt_full(cfg.budget.availability_factor) << '\n';
    os << "budget.eta = " << fmt_full(cfg.budget.converter_efficiency) << '\n';
    os << "constraints.coverage_floor = " << fmt_full(cfg.constraints.coverage_floor) << '\n';
    os << "constraints.power_max = " << fmt_full(cfg.constraints.power_max) << '\n';
    os << "constraints.density_max = " << fmt_full(cfg.constraints.density_max) << '\n';
    os << "feasibility.target = " << fmt_full(cfg.target_eeh) << '\n';
    os << "sim.trials = " << cfg.sim.trials << '\n';
    os << "sim.seed = " << cfg.sim.seed << '\n';
    os << "sim.window_radius = " << fmt_full(cfg.sim.window_radius) << '\n';
    os << "sim.tail_tolerance = " << fmt_full(cfg.sim.tail_tolerance) << '\n';
    os << "out.dir = " << cfg.out_dir << '\n';
}

int cmd_coverage(const RunConfig& cfg) {
    if (cfg.sinr_grid.empty()) throw config_error("empty grid of SINR thresholds");
    const bool closed_applicable = cfg.system.alpha == 4.0 && cfg.system.noise == 0.0;

    const fs::path dir = prepare_out_dir(cfg);
    auto os = open_output(dir / "coverage.csv");
    os << "T,coverage_integral";
    if (closed_applicable) os << ",coverage_closed_alpha4";
    os << '\n';
    for (double t : cfg.sinr_grid) {
        const double integral = coverage_probability(cfg.system, t);
        os << fmt(t) << ',' << fmt(integral);
        if (closed_applicable) os << ',' << fmt(coverage_probability_closed_alpha4(t));
        os << '\n';
    }
    std::cout << "wrote " << (dir / "coverage.csv").string() << " (" << cfg.sinr_grid.size()
              << " rows)\n";
    return 0;
}

int cmd_eeh(const RunConfig& cfg) {
    if (cfg.theta_grid.empty()) throw config_error("empty grid of harvesting thresholds");
    const bool closed_applicable = cfg.system.alpha == 4.0 && cfg.system.noise == 0.0;

    const fs::path dir = prepare_out_dir(cfg);
    auto os = open_output(dir / "eeh.csv");
    os << "theta_W,eeh_inverse_laplace";
    if (closed_applicable) os << ",eeh_closed_alpha4";
    os << '\n';
    for (double theta : cfg.theta_grid) {
        const EehQuery query{cfg.system, theta};
        os << fmt(theta) << ',' << fmt(eeh_probability(query));
        if (closed_applicable) os << ',' << fmt(eeh_probability_closed_alpha4(query));
        os << '\n';
    }
    std::cout << "wrote " << (dir / "eeh.csv").string() << " (" << cfg.theta_grid.size()
              << " rows)\n";
    return 0;
}

int cmd_montecarlo(const RunConfig& cfg) {
    if (cfg.sinr_grid.empty()) throw config_error("empty grid of SINR thresholds");
    if (cfg.theta_grid.empty()) throw config_error("empty grid of harvesting thresholds");

    const fs::path dir = prepare_out_dir(cfg);
    const double window = mc::resolved_window_radius(cfg.system, cfg.sim);
    std::cout << "window radius " << fmt(window) << " m, mean truncated interference "
              << fmt(mc::expected_tail_interference(cfg.system, window))
              << " W (compensated), seed " << cfg.sim.seed << ", " << cfg.sim.trials
              << " trials\n";

    auto os = open_output(dir / "montecarlo.csv");
    os << "quantity,analytic,mc_value,ci_halfwidth,agree\n";

    bool all_agree = true;
    auto emit = [&](const std::string& quantity, double analytic,
                    const mc::ProbabilityEstimate& est) {
        const bool agree = std::abs(analytic - est.value) <= 1.5 * est.ci_halfwidth;
        all_agree = all_agree && agree;
        os << quantity << ',' << fmt(analytic) << ',' << fmt(est.value) << ','
           << fmt(est.ci_halfwidth) << ',' << (agree ? "true" : "false") << '\n';
    };

    for (double t : cfg.sinr_grid) {
        emit("coverage@T=" + fmt(t), coverage_probability(cfg.system, t),
             mc::estimate_coverage(cfg.system, t, cfg.sim));
    }
    for (double theta : cfg.theta_grid) {
        emit("eeh@theta=" + fmt(theta), eeh_probability({cfg.system, theta}),
             mc::estimate_eeh(cfg.system, theta, cfg.sim));
    }

    // Interference exceedance around the distribution's characteristic
    // scale x_c = c^(alpha/2), where L_{I(0)}(s) = exp(-c s^(2/alpha)).
    const double beta = 2.0 / cfg.system.alpha;
    const double c = std::numbers::pi * cfg.system.lambda *
                     num::g_kernel_zero(cfg.system.alpha) * std::pow(cfg.system.power, beta);
    const double x_c = std::pow(c, 1.0 / beta);
    const std::vector<double> levels = {0.25 * x_c, 0.5 * x_c, x_c, 2.0 * x_c, 4.0 * x_c};
    const auto estimates = mc::estimate_interference_ccdf(cfg.system, levels, cfg.sim);
    for (std::size_t i = 0; i < levels.size(); ++i) {
        emit("interference_ccdf@x=" + fmt(levels[i]),
             1.0 - interference_cdf_at_origin(cfg.system, levels[i]), estimates[i]);
    }

    std::cout << "wrote " << (dir / "montecarlo.csv").string()
              << (all_agree ? " (all quantities agree)\n" : " (DISAGREEMENT FOUND)\n");
    if (!all_agree && cfg.strict) return 4;
    return 0;
}

int cmd_figures(const RunConfig& cfg, int which) {
    const fs::path dir = prepare_out_dir(cfg);
    feas::SweepTable table;
    std::string xlabel, ylabel;
    bool log_x = false, log_y = false;

    if (which == 2) {
        const auto grid = linspace(0.0005, 0.03, 60);
        const std::vector<double> rho_list{0.1, 0.5, 0.9};
        table = feas::sweep_fig2(grid, rho_list, cfg.system.epsilon, cfg.theta_grid.at(0));
        xlabel = "lambda * sqrt(P) [W^0.5 / m^2]";
        ylabel = "EEH probability";
    } else if (which == 3) {
        const auto grid = logspace(0.01, 2.0, 40);
        const std::vector<double> lambda_list{1e-4, 1e-2};
        const std::vector<double> eta_list{0.3, 0.6};
        table = feas::sweep_fig3(grid, lambda_list, eta_list, cfg.system.rho,
                                 cfg.system.epsilon, cfg.budget.maintenance_power);
        xlabel = "availability factor zeta";
        ylabel = "max EEH probability";
        log_x = true;
    } else if (which == 4) {
        const auto grid = logspace(0.01, 2.0, 40);
        const std::vector<double> targets{0.5, 0.8, 0.9};
        table = feas::sweep_fig4(grid, targets, 0.3, cfg.system.rho, cfg.system.epsilon,
                                 cfg.budget.maintenance_power);
        auto second = feas::sweep_fig4(grid, targets, 0.6, cfg.system.rho, cfg.system.epsilon,
                                       cfg.budget.maintenance_power);
        for (auto& series : second.series) table.series.push_back(std::move(series));
        table.metadata.emplace_back("eta_list", "0.3,0.6");
        xlabel = "availability factor zeta";
        ylabel = "required density [BS/m^2]";
        log_x = log_y = true;
    } else {
        throw config_error("unknown figure number (expected 2, 3 or 4)");
    }

    const std::string csv_name = "fig" + std::to_string(which) + ".csv";
    const std::string plot_name = "fig" + std::to_string(which) + ".plot";
    {
        auto os = open_output(dir / csv_name);
        write_sweep_csv(table, os);
    }
    {
        auto os = open_output(dir / plot_name);
        write_plot_script(table, csv_name, xlabel, ylabel, log_x, log_y, os);
    }
    std::cout << "wrote " << (dir / csv_name).string() << " and " << (dir / plot_name).string()
              << '\n';
    return 0;
}

int cmd_feasibility(const RunConfig& cfg) {
    const fs::path dir = prepare_out_dir(cfg);
    const double rho = cfg.system.rho;
    const double epsilon = cfg.system.epsilon;
    const double pm = cfg.budget.maintenance_power;
    const double eta = cfg.budget.converter_efficiency;
    const double lambda_max = cfg.constraints.density_max;

    const double zeta_star = feas::feasible_availability_factor(lambda_max, pm, eta, rho,
                                                                epsilon);

    struct LevelRow {
        std::string level;
        double zeta;
        bool feasible;
    };
    // Level 1 is reported at the best availability the cap supports (floored
    // at the smallest sweep default 0.01); the others at their defining zeta.
    const double zeta1 = std::clamp(zeta_star, 0.01, 1.0);
    const std::vector<LevelRow> rows = {
        {"secondary_battery", zeta1, zeta_star >= 0.01},
        {"basic_system", 1.0, false},
        {"battery_free", 10.0, false},
    };

    auto os = open_output(dir / "feasibility.csv");
    os << "level,zeta,theta_W,p_eeh_at_density_max,required_density,feasible\n";

    std::cout << "scenario " << cfg.scenario << ": density_max=" << fmt(lambda_max)
              << " /m^2, pm=" << fmt(pm) << " W, eta=" << fmt(eta) << ", rho=" << fmt(rho)
              << ", epsilon=" << fmt(epsilon) << ", target=" << fmt(cfg.target_eeh) << '\n';
    std::cout << "feasible availability factor (P_eeh >= 0.5): zeta* = " << fmt(zeta_star)
              << '\n';

    for (const auto& row : rows) {
        const feas::EnergyBudget budget{pm, row.zeta, eta};
        const double theta = feas::harvest_threshold(budget);
        const double achieved = feas::solve_p3(budget, lambda_max, rho, epsilon).p_eeh;
        const double required = feas::required_density(cfg.target_eeh, budget, rho, epsilon);
        const bool feasible =
            row.level == "secondary_battery" ? row.feasible : required <= lambda_max;

        os << row.level << ',' << fmt(row.zeta) << ',' << fmt(theta) << ',' << fmt(achieved)
           << ',' << fmt(required) << ',' << (feasible ? "true" : "false") << '\n';
        std::cout << "  " << row.level << " (zeta=" << fmt(row.zeta) << "): theta="
                  << fmt(theta) << " W, P_eeh(lambda_max)=" << fmt(achieved)
                  << ", required density for target=" << fmt(required) << " -> "
                  << (feasible ? "feasible" : "infeasible") << '\n';
    }
    std::cout << "wrote " << (dir / "feasibility.csv").string() << '\n';
    return 0;
}

}  // namespace siet::cli
