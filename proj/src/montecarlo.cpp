#include "siet/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "siet/numerics.hpp"
#include "siet/rng.hpp"

namespace siet::mc {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kMaxResamplesPerTrial = 100000;

// distance^-alpha from the squared distance, with fast paths for the
// exponents the estimators spend almost all their time on.
inline double inv_dist_pow(double r2, double alpha) {
    if (alpha == 4.0) return 1.0 / (r2 * r2);
    if (alpha == 3.0) return 1.0 / (r2 * std::sqrt(r2));
    return std::pow(r2, -0.5 * alpha);
}

int resolve_workers(int workers, std::uint64_t trials) {
    if (workers <= 0) {
        const unsigned hw = std::thread::hardware_concurrency();
        workers = static_cast<int>(std::min<unsigned>(hw == 0 ? 1 : hw, 8));
    }
    const std::uint64_t cap = std::max<std::uint64_t>(trials / 256, 1);
    return static_cast<int>(std::min<std::uint64_t>(workers, cap));
}

double binomial_halfwidth(std::uint64_t hits, std::uint64_t n) {
    const double p = static_cast<double>(hits) / static_cast<double>(n);
    double half = 1.96 * std::sqrt(p * (1.0 - p) / static_cast<double>(n));
    if (hits == 0 || hits == n) {
        half = std::max(half, 3.0 / static_cast<double>(n));
    }
    return half;
}

// Runs `body(worker, trial, rng)` for every trial index, partitioned
// contiguously across n_workers threads. Bodies must not throw; all
// cross-worker state lives in per-worker tallies merged afterwards, so the
// partitioning cannot change results.
template <typename Body>
void for_each_trial(const SimConfig& config, int n_workers, Body&& body) {
    if (n_workers <= 1) {
        for (std::uint64_t i = 0; i < config.trials; ++i) {
            TrialRng rng(config.seed, i);
            body(0, i, rng);
        }
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(n_workers);
    const std::uint64_t chunk = (config.trials + n_workers - 1) / n_workers;
    for (int w = 0; w < n_workers; ++w) {
        const std::uint64_t begin = w * chunk;
        const std::uint64_t end = std::min(config.trials, begin + chunk);
        pool.emplace_back([&, w, begin, end] {
            for (std::uint64_t i = begin; i < end; ++i) {
                TrialRng rng(config.seed, i);
                body(w, i, rng);
            }
        });
    }
    for (auto& t : pool) t.join();
}

void warn_on_empties(std::uint64_t empties, std::uint64_t trials) {
    if (empties * 1000 > trials) {
        std::cerr << "warning: " << empties << " empty realizations resampled over "
                  << trials << " trials; enlarge the window or density\n";
    }
}

}  // namespace

double auto_window_radius(const SystemParams& params, double tail_tolerance) {
    if (!(tail_tolerance > 0.0)) {
        throw std::invalid_argument("tail_tolerance must be positive");
    }
    if (!(params.alpha > 2.0)) throw std::invalid_argument("alpha must exceed 2");
    const double base = 2.0 * kPi * params.lambda * params.power /
                        ((params.alpha - 2.0) * tail_tolerance);
    return std::max(1.0, std::pow(base, 1.0 / (params.alpha - 2.0)));
}

double expected_tail_interference(const SystemParams& params, double radius) {
    return 2.0 * kPi * params.lambda * params.power *
           std::pow(radius, 2.0 - params.alpha) / (params.alpha - 2.0);
}

double resolved_window_radius(const SystemParams& params, const SimConfig& config) {
    if (config.window_radius > 0.0) return config.window_radius;
    return auto_window_radius(params, config.tail_tolerance);
}

PppRealization sample_ppp(const SystemParams& params, const SimConfig& config,
                          std::uint64_t trial_index) {
    const double radius = resolved_window_radius(params, config);
    TrialRng rng(config.seed, trial_index);

    PppRealization out;
    out.window_radius = radius;
    const std::uint64_t count = rng.poisson(params.lambda * kPi * radius * radius);
    out.points.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) {
        const double v = 1.0 - rng.uniform();  // (0, 1], so distance is in (0, R]
        const double distance = radius * std::sqrt(v);
        const double fade = rng.exponential(params.power);
        out.points.push_back({distance, fade});
    }
    return out;
}

ProbabilityEstimate estimate_coverage(const SystemParams& params, double sinr_threshold,
                                      const SimConfig& config, int workers) {
    if (config.trials < 1) throw std::invalid_argument("trials must be >= 1");
    if (params.rho == 0.0 && params.noise == 0.0) {
        throw std::invalid_argument("SINR undefined for rho = 0 with zero noise");
    }
    const double radius = resolved_window_radius(params, config);
    const double r2max = radius * radius;
    const double mean_count = params.lambda * kPi * r2max;
    const double tail = expected_tail_interference(params, radius);
    const double alpha = params.alpha;

    struct alignas(64) Tally {
        std::uint64_t covered = 0;
        std::uint64_t empties = 0;
        std::uint64_t exhausted = 0;
    };
    const int n_workers = resolve_workers(workers, config.trials);
    std::vector<Tally> tallies(n_workers);

    for_each_trial(config, n_workers, [&](int w, std::uint64_t, TrialRng& rng) {
        std::uint64_t count = rng.poisson(mean_count);
        int resamples = 0;
        while (count == 0) {
            ++tallies[w].empties;
            if (++resamples > kMaxResamplesPerTrial) {
                ++tallies[w].exhausted;
                return;
            }
            count = rng.poisson(mean_count);
        }

        // Single pass: keep the current nearest point aside and fold any
        // point it displaces into the interference sum.
        double min_v = std::numeric_limits<double>::infinity();
        double serving_term = 0.0;
        double interference = 0.0;
        for (std::uint64_t i = 0; i < count; ++i) {
            const double v = 1.0 - rng.uniform();
            const double fade = rng.exponential(params.power);
            const double term = fade * inv_dist_pow(r2max * v, alpha);
            if (v < min_v) {
                min_v = v;
                interference += serving_term;
                serving_term = term;
            } else {
                interference += term;
            }
        }
        interference += tail;

        const double sinr = params.rho * serving_term /
                            (params.noise + params.rho * interference);
        if (sinr > sinr_threshold) ++tallies[w].covered;
    });

    std::uint64_t covered = 0, empties = 0, exhausted = 0;
    for (const auto& t : tallies) {
        covered += t.covered;
        empties += t.empties;
        exhausted += t.exhausted;
    }
    if (exhausted > 0) {
        throw num::numerical_error("window persistently empty; cannot estimate coverage");
    }
    warn_on_empties(empties, config.trials);

    ProbabilityEstimate est;
    est.value = static_cast<double>(covered) / static_cast<double>(config.trials);
    est.ci_halfwidth = binomial_halfwidth(covered, config.trials);
    est.trials = config.trials;
    est.source = Source::MonteCarlo;
    return est;
}

std::vector<ProbabilityEstimate> estimate_interference_ccdf(const SystemParams& params,
                                                            std::span<const double> levels,
                                                            const SimConfig& config,
                                                            int workers) {
    if (config.trials < 1) throw std::invalid_argument("trials must be >= 1");
    for (std::size_t i = 0; i < levels.size(); ++i) {
        if (!(levels[i] > 0.0)) throw std::invalid_argument("levels must be positive");
        if (i > 0 && !(levels[i] > levels[i - 1])) {
            throw std::invalid_argument("levels must be ascending");
        }
    }
    const double radius = resolved_window_radius(params, config);
    const double r2max = radius * radius;
    const double mean_count = params.lambda * kPi * r2max;
    const double tail = expected_tail_interference(params, radius);
    const double alpha = params.alpha;

    struct Tally {
        std::vector<std::uint64_t> exceed;
    };
    const int n_workers = resolve_workers(workers, config.trials);
    std::vector<Tally> tallies(n_workers);
    for (auto& t : tallies) t.exceed.assign(levels.size(), 0);

    for_each_trial(config, n_workers, [&](int w, std::uint64_t, TrialRng& rng) {
        const std::uint64_t count = rng.poisson(mean_count);
        double interference = tail;
        for (std::uint64_t i = 0; i < count; ++i) {
            const double v = 1.0 - rng.uniform();
            const double fade = rng.exponential(params.power);
            interference += fade * inv_dist_pow(r2max * v, alpha);
        }
        // Levels ascend, so stop at the first level not exceeded.
        for (std::size_t j = 0; j < levels.size(); ++j) {
            if (interference > levels[j]) {
                ++tallies[w].exceed[j];
            } else {
                break;
            }
        }
    });

    std::vector<ProbabilityEstimate> out(levels.size());
    for (std::size_t j = 0; j < levels.size(); ++j) {
        std::uint64_t hits = 0;
        for (const auto& t : tallies) hits += t.exceed[j];
        out[j].value = static_cast<double>(hits) / static_cast<double>(config.trials);
        out[j].ci_halfwidth = binomial_halfwidth(hits, config.trials);
        out[j].trials = config.trials;
        out[j].source = Source::MonteCarlo;
    }
    return out;
}

ProbabilityEstimate estimate_eeh(const SystemParams& params, double theta,
                                 const SimConfig& config, int workers) {
    if (config.trials < 1) throw std::invalid_argument("trials must be >= 1");
    if (!(theta > 0.0)) throw std::invalid_argument("theta must be positive");
    const double radius = resolved_window_radius(params, config);
    const double r2max = radius * radius;
    const double mean_count = params.lambda * kPi * r2max;
    const double tail = expected_tail_interference(params, radius);
    const double alpha = params.alpha;

    struct alignas(64) Tally {
        std::uint64_t exceed = 0;
    };
    const int n_workers = resolve_workers(workers, config.trials);
    std::vector<Tally> tallies(n_workers);

    for_each_trial(config, n_workers, [&](int w, std::uint64_t, TrialRng& rng) {
        const std::uint64_t count = rng.poisson(mean_count);
        double interference = tail;
        for (std::uint64_t i = 0; i < count; ++i) {
            const double v = 1.0 - rng.uniform();
            const double fade = rng.exponential(params.power);
            interference += fade * inv_dist_pow(r2max * v, alpha);
        }
        const bool active = rng.uniform() < params.epsilon;
        const double split = active ? 1.0 - params.rho : 1.0;
        const double harvested = interference * split + params.noise;
        if (harvested > theta) ++tallies[w].exceed;
    });

    std::uint64_t exceed = 0;
    for (const auto& t : tallies) exceed += t.exceed;

    ProbabilityEstimate est;
    est.value = static_cast<double>(exceed) / static_cast<double>(config.trials);
    est.ci_halfwidth = binomial_halfwidth(exceed, config.trials);
    est.trials = config.trials;
    est.source = Source::MonteCarlo;
    return est;
}

}  // namespace siet::mc
