#include "siet/feasibility.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <stdexcept>

#include "siet/numerics.hpp"

namespace siet::feas {

namespace {

std::string format_value(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

// Grows hi from a small positive density until f(hi) >= target.
double bracket_density(const std::function<double(double)>& f, double target) {
    double hi = 1e-6;
    for (int i = 0; i < 200 && f(hi) < target; ++i) hi *= 2.0;
    return hi;
}

}  // namespace

EnergyBudget validate(const EnergyBudget& budget) {
    if (!(budget.maintenance_power > 0.0)) {
        throw std::invalid_argument("maintenance_power must be positive");
    }
    if (!(budget.availability_factor > 0.0)) {
        throw std::invalid_argument("availability_factor must be positive");
    }
    if (!(budget.converter_efficiency > 0.0 && budget.converter_efficiency <= 1.0)) {
        throw std::invalid_argument("converter_efficiency out of (0,1]");
    }
    return budget;
}

FeasibilityConstraints validate(const FeasibilityConstraints& constraints) {
    if (!(constraints.coverage_floor >= 0.0 && constraints.coverage_floor <= 1.0)) {
        throw std::invalid_argument("coverage_floor out of [0,1]");
    }
    if (!(constraints.power_max > 0.0)) throw std::invalid_argument("power_max must be positive");
    if (!(constraints.density_max > 0.0)) {
        throw std::invalid_argument("density_max must be positive");
    }
    return constraints;
}

double harvest_threshold(const EnergyBudget& budget) {
    validate(budget);
    return budget.availability_factor * budget.maintenance_power / budget.converter_efficiency;
}

P3Solution solve_p3(const EnergyBudget& budget, double density_max, double rho,
                    double epsilon) {
    if (!(density_max > 0.0)) throw std::invalid_argument("density_max must be positive");
    const double theta = harvest_threshold(budget);

    auto objective = [&](double lambda_s) {
        return eeh_closed_standard(lambda_s, rho, epsilon, theta);
    };
    const double at_cap = objective(density_max);
    if (objective(0.5 * density_max) > at_cap || objective(0.25 * density_max) > at_cap) {
        throw num::numerical_error("EEH objective is not increasing in density");
    }
    return {density_max, at_cap};
}

P2Solution solve_p2(double theta, const FeasibilityConstraints& constraints, double rho,
                    double epsilon) {
    validate(constraints);
    const EehQuery query{
        siet::validate(SystemParams{constraints.density_max, constraints.power_max, 4.0, 0.0,
                                    rho, epsilon}),
        theta};
    return {constraints.density_max, constraints.power_max, eeh_probability_closed_alpha4(query)};
}

P2Solution solve_p2(const EnergyBudget& budget, const FeasibilityConstraints& constraints,
                    double rho, double epsilon) {
    return solve_p2(harvest_threshold(budget), constraints, rho, epsilon);
}

ConstraintReport check_p1_constraints(const SystemParams& params, double sinr_threshold,
                                      const FeasibilityConstraints& constraints) {
    validate(constraints);
    ConstraintReport report{};
    report.coverage_value = coverage_probability(params, sinr_threshold);
    report.coverage_ok = report.coverage_value >= constraints.coverage_floor;
    report.power_ok = params.power <= constraints.power_max;
    report.density_ok = params.lambda <= constraints.density_max;
    return report;
}

double required_density(double target_eeh, const EnergyBudget& budget, double rho,
                        double epsilon) {
    if (!(target_eeh > 0.0 && target_eeh < 1.0)) {
        throw std::invalid_argument("target_eeh must lie in (0,1)");
    }
    const double theta = harvest_threshold(budget);
    auto f = [&](double lambda_s) {
        return eeh_closed_standard(lambda_s, rho, epsilon, theta);
    };
    const double hi = bracket_density(f, target_eeh);
    return num::find_root_monotone(f, target_eeh, 0.0, hi, 1e-10 * target_eeh);
}

double feasible_availability_factor(double density_max, double maintenance_power,
                                    double converter_efficiency, double rho,
                                    double epsilon) {
    if (!(density_max > 0.0)) throw std::invalid_argument("density_max must be positive");
    auto p_at = [&](double zeta) {
        const double theta = zeta * maintenance_power / converter_efficiency;
        return eeh_closed_standard(density_max, rho, epsilon, theta);
    };
    double lo = 1e-12, hi = 1.0;
    if (p_at(lo) < 0.5) return 0.0;  // unreachable even for a vanishing budget
    for (int i = 0; i < 200 && p_at(hi) >= 0.5; ++i) hi *= 2.0;
    // p_at decreases in zeta, so bisect for the 0.5 crossing.
    return num::find_root_monotone(p_at, 0.5, lo, hi, 1e-12);
}

SweepTable sweep_fig2(std::span<const double> lambda_sqrt_p_grid,
                      std::span<const double> rho_list, double epsilon, double theta) {
    SweepTable table;
    table.axis_name = "lambda_sqrtP";
    table.axis_values.assign(lambda_sqrt_p_grid.begin(), lambda_sqrt_p_grid.end());
    for (double rho : rho_list) {
        std::vector<double> column;
        column.reserve(lambda_sqrt_p_grid.size());
        for (double x : lambda_sqrt_p_grid) {
            column.push_back(eeh_closed_standard(x, rho, epsilon, theta));
        }
        table.series.emplace_back("p_eeh_rho" + format_value(rho), std::move(column));
    }
    table.metadata = {{"epsilon", format_value(epsilon)}, {"theta_W", format_value(theta)}};
    return table;
}

SweepTable sweep_fig3(std::span<const double> zeta_grid,
                      std::span<const double> lambda_max_list,
                      std::span<const double> eta_list, double rho, double epsilon,
                      double maintenance_power) {
    SweepTable table;
    table.axis_name = "zeta";
    table.axis_values.assign(zeta_grid.begin(), zeta_grid.end());
    for (double lambda_max : lambda_max_list) {
        for (double eta : eta_list) {
            std::vector<double> column;
            column.reserve(zeta_grid.size());
            for (double zeta : zeta_grid) {
                const double theta = zeta * maintenance_power / eta;
                column.push_back(eeh_closed_standard(lambda_max, rho, epsilon, theta));
            }
            table.series.emplace_back(
                "p_eeh_lambda" + format_value(lambda_max) + "_eta" + format_value(eta),
                std::move(column));
        }
    }
    table.metadata = {{"rho", format_value(rho)},
                      {"epsilon", format_value(epsilon)},
                      {"pm_W", format_value(maintenance_power)}};
    return table;
}

SweepTable sweep_fig4(std::span<const double> zeta_grid,
                      std::span<const double> target_list, double eta, double rho,
                      double epsilon, double maintenance_power) {
    SweepTable table;
    table.axis_name = "zeta";
    table.axis_values.assign(zeta_grid.begin(), zeta_grid.end());
    for (double target : target_list) {
        std::vector<double> column;
        column.reserve(zeta_grid.size());
        for (double zeta : zeta_grid) {
            const EnergyBudget budget{maintenance_power, zeta, eta};
            column.push_back(required_density(target, budget, rho, epsilon));
        }
        table.series.emplace_back(
            "lambda_target" + format_value(target) + "_eta" + format_value(eta),
            std::move(column));
    }
    table.metadata = {{"rho", format_value(rho)},
                      {"epsilon", format_value(epsilon)},
                      {"pm_W", format_value(maintenance_power)},
                      {"eta", format_value(eta)}};
    return table;
}

}  // namespace siet::feas
