#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "siet/analytic.hpp"
#include "siet/core_model.hpp"

// Deployment feasibility: the harvesting threshold implied by an energy
// budget, the constrained EEH maximization and its closed-form solution,
// inversion of the density needed to hit a target probability, and the
// parameter sweeps behind the bundled figures.

namespace siet::feas {

struct EnergyBudget {
    double maintenance_power;    // p_m [W], > 0
    double availability_factor;  // zeta, > 0 (< 1 secondary battery, 1 basic
                                 // system, >> 1 battery-free)
    double converter_efficiency;  // eta in (0, 1]
};

struct FeasibilityConstraints {
    double coverage_floor;  // minimum coverage probability, in [0, 1]
    double power_max;       // [W], > 0
    double density_max;     // [BS/m^2], > 0
};

// Column-oriented sweep results; every series holds one value per axis point.
struct SweepTable {
    std::string axis_name;
    std::vector<double> axis_values;
    std::vector<std::pair<std::string, std::vector<double>>> series;
    std::vector<std::pair<std::string, std::string>> metadata;
};

EnergyBudget validate(const EnergyBudget& budget);
FeasibilityConstraints validate(const FeasibilityConstraints& constraints);

// Harvested-power usability threshold before the converter:
//   Theta = zeta * p_m / eta.
double harvest_threshold(const EnergyBudget& budget);

struct P3Solution {
    double lambda_s;  // optimal standard density (= density_max)
    double p_eeh;     // EEH probability achieved there
};

// Density-capped maximization at unit transmit power. The objective is
// increasing in the density (asserted numerically), so the cap is optimal.
P3Solution solve_p3(const EnergyBudget& budget, double density_max, double rho,
                    double epsilon);

struct P2Solution {
    double lambda;
    double power;
    double p_eeh;
};

// Power- and density-capped maximization (zero-noise, alpha = 4 regime):
// the objective increases in lambda*sqrt(P), so both caps bind at once.
P2Solution solve_p2(double theta, const FeasibilityConstraints& constraints, double rho,
                    double epsilon);
P2Solution solve_p2(const EnergyBudget& budget, const FeasibilityConstraints& constraints,
                    double rho, double epsilon);

struct ConstraintReport {
    double coverage_value;
    bool coverage_ok;
    bool power_ok;
    bool density_ok;

    bool satisfied() const { return coverage_ok && power_ok && density_ok; }
};

// Evaluates the coverage probability and compares each cap against the
// parameter set; reports every constraint's status.
ConstraintReport check_p1_constraints(const SystemParams& params, double sinr_threshold,
                                      const FeasibilityConstraints& constraints);

// Standard density at which the closed-form EEH probability reaches
// target_eeh (unit power), found by monotone root search to 1e-10 relative.
double required_density(double target_eeh, const EnergyBudget& budget, double rho,
                        double epsilon);

// Largest availability factor zeta whose threshold still allows an EEH
// probability of at least 0.5 at the given density cap.
double feasible_availability_factor(double density_max, double maintenance_power,
                                    double converter_efficiency, double rho, double epsilon);

// EEH probability versus lambda*sqrt(P), one series per splitting factor.
SweepTable sweep_fig2(std::span<const double> lambda_sqrt_p_grid,
                      std::span<const double> rho_list, double epsilon, double theta);

// Density-capped EEH probability versus availability factor, one series per
// (density cap, converter efficiency) pair.
SweepTable sweep_fig3(std::span<const double> zeta_grid,
                      std::span<const double> lambda_max_list,
                      std::span<const double> eta_list, double rho, double epsilon,
                      double maintenance_power);

// Density required to hold each target EEH probability, versus availability
// factor, at a fixed converter efficiency.
SweepTable sweep_fig4(std::span<const double> zeta_grid,
                      std::span<const double> target_list, double eta, double rho,
                      double epsilon, double maintenance_power);

}  // namespace siet::feas
