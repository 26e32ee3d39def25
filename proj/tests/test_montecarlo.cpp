#include "doctest.h"

#include <cmath>
#include <numbers>
#include <vector>

#include "reference.hpp"
#include "siet/analytic.hpp"
#include "siet/montecarlo.hpp"

using namespace siet;
using std::numbers::pi;

namespace {

SystemParams params_alpha4(double lambda, double rho = 0.1, double noise = 0.0) {
    return validate({lambda, 1.0, 4.0, noise, rho, 0.3});
}

}  // namespace

TEST_CASE("auto window radius solves the tail bound") {
    // sqrt(2 pi * 1e-2 / (2 * 1e-9)), frozen independently
    CHECK(mc::auto_window_radius(params_alpha4(1e-2), 1e-9) ==
          doctest::Approx(5604.991216397929).epsilon(1e-12));
    CHECK(mc::expected_tail_interference(params_alpha4(1e-2), 5604.991216397929) ==
          doctest::Approx(1e-9).epsilon(1e-12));

    CHECK(mc::auto_window_radius(params_alpha4(1e-2), 1e12) == 1.0);  // floor

    SystemParams heavy = validate({1e-2, 1.0, 2.01, 0.0, 0.1, 0.3});
    CHECK(mc::auto_window_radius(heavy, 1e-9) > mc::auto_window_radius(params_alpha4(1e-2), 1e-9));
}

TEST_CASE("sample_ppp is deterministic in (seed, trial)") {
    mc::SimConfig config;
    config.seed = 99;
    const auto a = mc::sample_ppp(params_alpha4(1e-4), config, 7);
    const auto b = mc::sample_ppp(params_alpha4(1e-4), config, 7);
    REQUIRE(a.points.size() == b.points.size());
    CHECK(a.window_radius == b.window_radius);
    for (std::size_t i = 0; i < a.points.size(); ++i) {
        CHECK(a.points[i].distance == b.points[i].distance);
        CHECK(a.points[i].fade == b.points[i].fade);
    }
    const auto c = mc::sample_ppp(params_alpha4(1e-4), config, 8);
    CHECK(a.points.size() != c.points.size());  // overwhelmingly likely
}

TEST_CASE("sample_ppp distances stay inside the window and fades are positive") {
    mc::SimConfig config;
    config.window_radius = 200.0;
    const auto realization = mc::sample_ppp(params_alpha4(1e-3), config, 0);
    CHECK(realization.window_radius == 200.0);
    CHECK(!realization.points.empty());
    for (const auto& point : realization.points) {
        CHECK(point.distance > 0.0);
        CHECK(point.distance <= 200.0);
        CHECK(point.fade >= 0.0);
    }
}

TEST_CASE("sample_ppp point count matches the Poisson mean and variance") {
    mc::SimConfig config;
    config.window_radius = 1000.0;
    config.seed = 2024;
    const SystemParams p = params_alpha4(1e-3);
    const double expected = 1e-3 * pi * 1e6;  // about 3141.6

    const int trials = 10000;
    double sum = 0.0, sum_sq = 0.0;
    for (int i = 0; i < trials; ++i) {
        const double n = static_cast<double>(mc::sample_ppp(p, config, i).points.size());
        sum += n;
        sum_sq += n * n;
    }
    const double mean = sum / trials;
    const double variance = sum_sq / trials - mean * mean;
    // 4 sigma band on the sample mean, sigma_mean = sqrt(mu/n)
    CHECK(std::abs(mean - expected) < 4.0 * std::sqrt(expected / trials));
    CHECK(variance == doctest::Approx(expected).epsilon(0.06));
}

TEST_CASE("empty-window limit yields an empty realization") {
    mc::SimConfig config;
    config.window_radius = 1.0;
    const auto realization = mc::sample_ppp(params_alpha4(1e-9), config, 3);
    CHECK(realization.points.empty());
}

TEST_CASE("nearest-distance law matches the sampled minima (KS test)") {
    const SystemParams p = params_alpha4(1e-4);
    mc::SimConfig config;
    config.seed = 77;
    const double lambda = p.lambda;

    std::vector<double> minima;
    minima.reserve(100000);
    for (int i = 0; i < 100000; ++i) {
        const auto realization = mc::sample_ppp(p, config, i);
        if (realization.points.empty()) continue;
        double lowest = realization.points.front().distance;
        for (const auto& point : realization.points) lowest = std::min(lowest, point.distance);
        minima.push_back(lowest);
    }
    REQUIRE(minima.size() == 100000);
    const double ks = ref::ks_statistic(
        std::move(minima),
        [lambda](double r) { return 1.0 - std::exp(-lambda * pi * r * r); });
    CHECK(ks < 0.00515);  // 1% critical value at n = 1e5
}

TEST_CASE("coverage estimate: degenerate threshold and closed-form agreement") {
    const SystemParams p = params_alpha4(1e-4);
    mc::SimConfig config;
    config.trials = 20000;
    config.seed = 11;

    CHECK(mc::estimate_coverage(p, 0.0, config).value == 1.0);

    const auto estimate = mc::estimate_coverage(p, 1.0, config);
    CHECK(estimate.trials == config.trials);
    CHECK(estimate.source == mc::Source::MonteCarlo);
    CHECK(std::abs(estimate.value - coverage_probability_closed_alpha4(1.0)) <=
          estimate.ci_halfwidth);
}

TEST_CASE("coverage estimate is invariant in rho at zero noise") {
    mc::SimConfig config;
    config.trials = 20000;
    config.seed = 5;
    const auto low = mc::estimate_coverage(params_alpha4(1e-4, 0.1), 1.0, config);
    const auto high = mc::estimate_coverage(params_alpha4(1e-4, 0.9), 1.0, config);
    CHECK(std::abs(low.value - high.value) <= low.ci_halfwidth + high.ci_halfwidth);
}

TEST_CASE("coverage estimate matches the integral with noise and at alpha = 3") {
    mc::SimConfig config;
    config.trials = 20000;
    config.seed = 303;

    SUBCASE("alpha 4, faint noise") {
        const SystemParams p = params_alpha4(1e-4, 0.1, 1e-13);
        const auto estimate = mc::estimate_coverage(p, 1.0, config);
        CHECK(std::abs(estimate.value - coverage_probability(p, 1.0)) <= estimate.ci_halfwidth);
    }
    SUBCASE("alpha 4, noise that bites") {
        const SystemParams p = params_alpha4(1e-4, 0.1, 1e-8);
        const auto estimate = mc::estimate_coverage(p, 1.0, config);
        // frozen quadrature value 0.40552: the noise exponent and the
        // splitting-factor placement must both be right to land here
        CHECK(std::abs(estimate.value - 0.4055191126638287) <= estimate.ci_halfwidth);
    }
    SUBCASE("alpha 3, zero noise") {
        const SystemParams p = validate({1e-4, 1.0, 3.0, 0.0, 0.1, 0.3});
        mc::SimConfig heavy = config;
        heavy.tail_tolerance = 1e-7;
        const auto estimate = mc::estimate_coverage(p, 1.0, heavy);
        CHECK(std::abs(estimate.value - coverage_probability(p, 1.0)) <= estimate.ci_halfwidth);
    }
}

TEST_CASE("interference exceedance matches the stable law") {
    const SystemParams p = params_alpha4(1e-2);
    mc::SimConfig config;
    config.trials = 10000;
    config.seed = 42;
    config.tail_tolerance = 1e-6;

    const double x0 = std::pow(pi * pi * 1e-2 / 4.0, 2);
    const std::vector<double> levels = {0.1 * x0, x0, 10.0 * x0};
    const auto estimates = mc::estimate_interference_ccdf(p, levels, config);
    REQUIRE(estimates.size() == levels.size());

    for (std::size_t i = 0; i < levels.size(); ++i) {
        const double exact = 1.0 - interference_cdf_closed_alpha4(1e-2, 1.0, levels[i]);
        CHECK(std::abs(estimates[i].value - exact) <= std::max(estimates[i].ci_halfwidth, 3e-4));
        if (i > 0) CHECK(estimates[i].value <= estimates[i - 1].value);
    }
    // erf(1) at the characteristic level
    CHECK(estimates[1].value == doctest::Approx(0.8427007929497149).epsilon(0.02));
}

TEST_CASE("interference levels must be positive and ascending") {
    const SystemParams p = params_alpha4(1e-2);
    mc::SimConfig config;
    config.trials = 10;
    const std::vector<double> bad_order = {2e-4, 1e-4};
    CHECK_THROWS_AS(mc::estimate_interference_ccdf(p, bad_order, config),
                    std::invalid_argument);
    const std::vector<double> nonpositive = {0.0, 1e-4};
    CHECK_THROWS_AS(mc::estimate_interference_ccdf(p, nonpositive, config),
                    std::invalid_argument);
}

TEST_CASE("EEH estimate agrees with the closed form") {
    const SystemParams p = params_alpha4(1e-2);
    mc::SimConfig config;
    config.trials = 10000;
    config.seed = 8;
    config.tail_tolerance = 1e-6;

    const auto estimate = mc::estimate_eeh(p, 1e-3, config);
    CHECK(std::abs(estimate.value - 0.7225659115926351) <= estimate.ci_halfwidth);
}

TEST_CASE("EEH estimate special cases") {
    mc::SimConfig config;
    config.trials = 2000;
    config.seed = 21;
    config.tail_tolerance = 1e-6;

    // threshold at or below the noise floor is met in every trial
    SystemParams noisy = params_alpha4(1e-2, 0.1, 5e-3);
    CHECK(mc::estimate_eeh(noisy, 5e-3, config).value == 1.0);
    CHECK(mc::estimate_eeh(noisy, 1e-3, config).value == 1.0);

    // idle-only network reduces to the plain exceedance
    SystemParams idle = params_alpha4(1e-2, 0.9);
    idle.epsilon = 0.0;
    mc::SimConfig wide = config;
    wide.trials = 10000;
    const auto estimate = mc::estimate_eeh(idle, 1e-3, wide);
    const double exact = 1.0 - interference_cdf_closed_alpha4(1e-2, 1.0, 1e-3);
    CHECK(std::abs(estimate.value - exact) <= estimate.ci_halfwidth);
}

TEST_CASE("estimates are bit-identical across repeats and worker counts") {
    const SystemParams p = params_alpha4(1e-4);
    mc::SimConfig config;
    config.trials = 6000;
    config.seed = 1234;

    const auto serial = mc::estimate_coverage(p, 1.0, config, 1);
    const auto repeat = mc::estimate_coverage(p, 1.0, config, 1);
    const auto parallel = mc::estimate_coverage(p, 1.0, config, 4);
    CHECK(serial.value == repeat.value);
    CHECK(serial.value == parallel.value);
    CHECK(serial.ci_halfwidth == parallel.ci_halfwidth);

    const auto eeh_serial = mc::estimate_eeh(p, 1e-6, config, 1);
    const auto eeh_parallel = mc::estimate_eeh(p, 1e-6, config, 3);
    CHECK(eeh_serial.value == eeh_parallel.value);
}

TEST_CASE("single-trial estimate reproduces a hand computation from sample_ppp") {
    const SystemParams p = params_alpha4(1e-4);
    mc::SimConfig config;
    config.trials = 1;
    config.seed = 4321;

    const auto realization = mc::sample_ppp(p, config, 0);
    REQUIRE(!realization.points.empty());
    std::size_t nearest = 0;
    for (std::size_t i = 1; i < realization.points.size(); ++i) {
        if (realization.points[i].distance < realization.points[nearest].distance) nearest = i;
    }
    double interference =
        mc::expected_tail_interference(p, realization.window_radius);
    for (std::size_t i = 0; i < realization.points.size(); ++i) {
        if (i == nearest) continue;
        interference +=
            realization.points[i].fade * std::pow(realization.points[i].distance, -p.alpha);
    }
    const double sinr = instantaneous_sinr(realization.points[nearest].fade,
                                           realization.points[nearest].distance, interference, p);

    const auto estimate = mc::estimate_coverage(p, 1.0, config, 1);
    CHECK(estimate.value == (sinr > 1.0 ? 1.0 : 0.0));
}

TEST_CASE("confidence interval uses the rule-of-three floor at the boundary") {
    const SystemParams p = params_alpha4(1e-4);
    mc::SimConfig config;
    config.trials = 1000;
    config.seed = 10;
    const auto certain = mc::estimate_coverage(p, 0.0, config);
    CHECK(certain.value == 1.0);
    CHECK(certain.ci_halfwidth == doctest::Approx(3.0 / 1000.0));
}
