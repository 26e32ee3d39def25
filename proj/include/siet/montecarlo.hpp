#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "siet/core_model.hpp"

// Stochastic oracle for the analytic results: samples base-station fields
// on a disk window with exponential fading marks and estimates coverage,
// interference exceedance, and energy-harvesting probabilities with
// binomial confidence intervals. Trials are independent streams keyed by
// (seed, trial index); estimates are bit-identical for any worker count.

namespace siet::mc {

struct PppPoint {
    double distance;  // to the origin [m], in (0, window_radius]
    double fade;      // exponential mark with mean P [W*m^alpha]
};

struct PppRealization {
    std::vector<PppPoint> points;
    double window_radius = 0.0;  // [m]
};

struct SimConfig {
    std::uint64_t trials = 10000;
    std::uint64_t seed = 12345;
    double window_radius = 0.0;    // [m]; 0 selects auto_window_radius
    double tail_tolerance = 1e-9;  // [W] bound on the mean truncated interference
};

enum class Source { MonteCarlo, Analytic };

struct ProbabilityEstimate {
    double value = 0.0;
    double ci_halfwidth = 0.0;  // 95% normal approximation, rule-of-three floored
    std::uint64_t trials = 0;
    Source source = Source::MonteCarlo;
};

// Smallest window radius R (floored at 1 m) such that the expected
// interference from base stations beyond R,
//   2*pi*lambda*P * R^(2-alpha) / (alpha-2),
// does not exceed tail_tolerance.
double auto_window_radius(const SystemParams& params, double tail_tolerance);

// Mean interference from outside a disk of the given radius. Estimators add
// this back onto every sampled interference so truncation leaves no bias.
double expected_tail_interference(const SystemParams& params, double radius);

// Window the estimators will actually use for this configuration.
double resolved_window_radius(const SystemParams& params, const SimConfig& config);

// One sampled constellation: Poisson count on the window disk, distances
// with density 2r/R^2, exponential fades. Fully determined by
// (config.seed, trial_index); an empty window yields an empty realization.
PppRealization sample_ppp(const SystemParams& params, const SimConfig& config,
                          std::uint64_t trial_index);

// Fraction of trials in which the SINR from the nearest base station
// exceeds the threshold. Empty realizations are resampled (and counted; a
// warning is emitted if they exceed 0.1% of trials).
ProbabilityEstimate estimate_coverage(const SystemParams& params, double sinr_threshold,
                                      const SimConfig& config, int workers = 0);

// Empirical P[I(0) > level] for each level (levels must be positive and
// ascending); the estimates are nonincreasing across levels by construction.
std::vector<ProbabilityEstimate> estimate_interference_ccdf(const SystemParams& params,
                                                            std::span<const double> levels,
                                                            const SimConfig& config,
                                                            int workers = 0);

// Fraction of trials in which the harvested power exceeds theta. Each trial
// draws the user state (active with probability epsilon); splitting applies
// to the RF term and the noise power is counted at the harvester.
ProbabilityEstimate estimate_eeh(const SystemParams& params, double theta,
                                 const SimConfig& config, int workers = 0);

}  // namespace siet::mc
