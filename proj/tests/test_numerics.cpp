#include "doctest.h"

#include <cmath>
#include <complex>
#include <numbers>

#include "reference.hpp"
#include "siet/numerics.hpp"

namespace num = siet::num;
using std::numbers::pi;

TEST_CASE("erf against the series reference") {
    CHECK(num::erf(0.0) == 0.0);
    CHECK(num::erf(1.0) == doctest::Approx(0.8427007929497149).epsilon(1e-14));
    for (double x = -3.0; x <= 3.0; x += 0.125) {
        const double reference = ref::erf_series(x);
        if (std::abs(reference) > 1e-30) {
            CHECK(num::erf(x) == doctest::Approx(reference).epsilon(1e-12));
        }
        CHECK(num::erf(x) == doctest::Approx(-num::erf(-x)).epsilon(1e-15));
    }
}

TEST_CASE("erf is nondecreasing and bounded") {
    double previous = -1.0;
    for (double x = -6.0; x <= 6.0; x += 0.05) {
        const double value = num::erf(x);
        CHECK(value > -1.0);
        CHECK(value < 1.0);
        CHECK(value >= previous);
        previous = value;
    }
    CHECK(num::erfc(6.0) == doctest::Approx(2.1519736712498913e-17).epsilon(1e-12));
}

TEST_CASE("g_kernel closed-form branch at alpha = 4") {
    CHECK(num::g_kernel(0.0, 4.0) == doctest::Approx(pi / 2).epsilon(1e-15));
    CHECK(num::g_kernel(1.0, 4.0) == doctest::Approx(pi / 4).epsilon(1e-15));
}

TEST_CASE("g_kernel quadrature branch matches the closed form on a log grid") {
    for (double y = 1e-4; y <= 1e4; y *= 10.0) {
        const double closed = pi / 2 - std::atan(y);
        CHECK(num::g_kernel_by_quadrature(y, 4.0) == doctest::Approx(closed).epsilon(1e-10));
    }
    CHECK(num::g_kernel_by_quadrature(0.0, 4.0) == doctest::Approx(pi / 2).epsilon(1e-10));
}

TEST_CASE("g_kernel at y = 0 matches the cosecant closed form") {
    // (2*pi/3)*csc(2*pi/3), frozen from an independent high-precision run
    CHECK(num::g_kernel(0.0, 3.0) == doctest::Approx(2.4183991523122905).epsilon(1e-12));
    CHECK(num::g_kernel_by_quadrature(0.0, 3.0) ==
          doctest::Approx(2.4183991523122905).epsilon(1e-9));
    CHECK(num::g_kernel(1.0, 3.0) == doctest::Approx(1.6712976965294421).epsilon(1e-9));
}

TEST_CASE("g_kernel is positive and strictly decreasing in y") {
    for (double alpha : {2.5, 3.0, 4.0, 5.5}) {
        double previous = num::g_kernel(0.0, alpha);
        for (double y : {0.1, 1.0, 10.0, 100.0, 2000.0}) {
            const double value = num::g_kernel(y, alpha);
            CHECK(value > 0.0);
            CHECK(value < previous);
            previous = value;
        }
    }
}

TEST_CASE("g_kernel rejects divergent exponents") {
    CHECK_THROWS_AS(num::g_kernel(1.0, 2.0), num::numerical_error);
    CHECK_THROWS_AS(num::g_kernel(1.0, 1.5), num::numerical_error);
}

TEST_CASE("integrate: elementary integrals") {
    const double inf = std::numeric_limits<double>::infinity();

    auto constant = num::integrate([](double) { return 1.0; }, 0.0, 1.0);
    CHECK(constant.converged);
    CHECK(constant.value == doctest::Approx(1.0).epsilon(1e-14));

    auto decay = num::integrate([](double x) { return std::exp(-x); }, 0.0, inf);
    CHECK(decay.converged);
    CHECK(decay.value == doctest::Approx(1.0).epsilon(1e-10));

    auto lorentz = num::integrate([](double x) { return 1.0 / (1.0 + x * x); }, 0.0, inf);
    CHECK(lorentz.converged);
    CHECK(lorentz.value == doctest::Approx(pi / 2).epsilon(1e-10));
    CHECK(lorentz.value == doctest::Approx(num::g_kernel(0.0, 4.0)).epsilon(1e-10));
}

TEST_CASE("integrate is linear in the integrand") {
    auto f = [](double x) { return std::exp(-x) * std::cos(3.0 * x); };
    const double base =
        num::integrate(f, 0.0, std::numeric_limits<double>::infinity()).value;
    for (double c : {0.25, 2.0, -7.5}) {
        auto scaled = num::integrate([&](double x) { return c * f(x); }, 0.0,
                                     std::numeric_limits<double>::infinity());
        CHECK(scaled.value == doctest::Approx(c * base).epsilon(1e-9));
    }
}

TEST_CASE("integrate reports non-convergence with its best estimate") {
    num::QuadratureSpec strict;
    strict.rel_tol = 1e-15;
    strict.abs_tol = 0.0;
    strict.max_subdivisions = 2;
    auto result = num::integrate([](double x) { return std::sqrt(std::abs(x - 0.3717)); },
                                 0.0, 1.0, strict);
    CHECK_FALSE(result.converged);
    CHECK(result.error > 0.0);
    CHECK(result.value == doctest::Approx(0.3318).epsilon(1e-2));
}

TEST_CASE("inverse Laplace: exponential median") {
    auto transform = [](std::complex<double> s) { return 1.0 / (1.0 + s); };
    for (auto method : {num::InversionMethod::FixedTalbot, num::InversionMethod::EulerSummation}) {
        num::InverseLaplaceSpec spec;
        spec.method = method;
        const double value = num::inverse_laplace_cdf(transform, std::log(2.0), spec);
        CHECK(value == doctest::Approx(0.5).epsilon(1e-7));
    }
}

TEST_CASE("inverse Laplace: unit point mass evaluated past the jump") {
    auto transform = [](std::complex<double> s) { return std::exp(-s); };
    const double value = num::inverse_laplace_cdf(transform, 2.0);
    CHECK(value == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("inverse Laplace recovers the one-sided stable CDF") {
    // L(s) = exp(-a sqrt(s)) has CDF erfc(a / (2 sqrt(x))).
    for (double a : {0.01, 0.1, 1.0}) {
        for (double x = 0.01 * a * a; x <= 1e4 * a * a; x *= 10.0) {
            const double exact = num::erfc(a / (2.0 * std::sqrt(x)));
            auto transform = [a](std::complex<double> s) { return std::exp(-a * std::sqrt(s)); };

            const double talbot = num::inverse_laplace_cdf(transform, x);
            CHECK(std::abs(talbot - exact) < 1e-6);

            num::InverseLaplaceSpec euler;
            euler.method = num::InversionMethod::EulerSummation;
            const double summed = num::inverse_laplace_cdf(transform, x, euler);
            CHECK(std::abs(summed - exact) < 1e-6);
        }
    }
}

TEST_CASE("inverse Laplace CDF is monotone along x") {
    auto transform = [](std::complex<double> s) { return std::exp(-0.1 * std::sqrt(s)); };
    double previous = -1.0;
    for (double x = 1e-4; x <= 10.0; x *= 1.7) {
        const double value = num::inverse_laplace_cdf(transform, x);
        CHECK(value >= previous - 1e-9);
        CHECK(value >= 0.0);
        CHECK(value <= 1.0);
        previous = value;
    }
}

TEST_CASE("inverse Laplace input validation and failure modes") {
    auto transform = [](std::complex<double> s) { return 1.0 / (1.0 + s); };
    CHECK_THROWS_AS(num::inverse_laplace_cdf(transform, 0.0), std::invalid_argument);
    num::InverseLaplaceSpec bad;
    bad.node_count = 4;
    CHECK_THROWS_AS(num::inverse_laplace_cdf(transform, 1.0, bad), std::invalid_argument);

    // Not a probability-density transform: the inversion escapes [0,1].
    auto bogus = [](std::complex<double> s) { return 50.0 / (1.0 + s); };
    CHECK_THROWS_AS(num::inverse_laplace_cdf(bogus, 1.0), num::numerical_error);
}

TEST_CASE("find_root_monotone solves the identity") {
    auto identity = [](double x) { return x; };
    CHECK(num::find_root_monotone(identity, 0.5, 0.0, 1.0, 1e-12) ==
          doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("find_root_monotone inverts erf at 0.8") {
    // frozen from an independent high-precision evaluation
    const double x = num::find_root_monotone([](double v) { return num::erf(v); }, 0.8, 0.0,
                                             3.0, 1e-14);
    CHECK(x == doctest::Approx(0.9061938024368232).epsilon(1e-10));
    CHECK(ref::erf_series(x) == doctest::Approx(0.8).epsilon(1e-12));
}

TEST_CASE("find_root_monotone works on decreasing functions and rejects bad brackets") {
    auto decreasing = [](double x) { return 1.0 - x * x; };
    const double x = num::find_root_monotone(decreasing, 0.5, 0.0, 1.0, 1e-13);
    CHECK(x == doctest::Approx(std::sqrt(0.5)).epsilon(1e-10));

    CHECK_THROWS_AS(num::find_root_monotone(decreasing, 5.0, 0.0, 1.0, 1e-12),
                    num::bracket_error);
}
