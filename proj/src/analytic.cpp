#include "siet/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace siet {

namespace {

constexpr double kPi = std::numbers::pi;

// L_{I(0)}(s) = exp(-c * s^beta) with beta = 2/alpha and
// c = (2 pi^2 lambda / alpha) * csc(2 pi / alpha) * P^beta.
struct OriginTransform {
    double c;
    double beta;
};

OriginTransform origin_transform(const SystemParams& params) {
    const double beta = 2.0 / params.alpha;
    const double c = kPi * params.lambda * num::g_kernel_zero(params.alpha) *
                     std::pow(params.power, beta);
    return {c, beta};
}

}  // namespace

double nearest_distance_pdf(double r, double lambda) {
    if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
    if (r < 0.0) throw std::invalid_argument("r must be nonnegative");
    return std::exp(-lambda * kPi * r * r) * 2.0 * kPi * lambda * r;
}

double InterferenceTransform::operator()(double s) const {
    if (!(s > 0.0)) throw std::invalid_argument("transform defined for s > 0");
    if (guard_radius < 0.0) throw std::invalid_argument("guard_radius must be >= 0");
    const double beta = 2.0 / params.alpha;
    const double sp_pow = std::pow(s * params.power, beta);
    const double y = guard_radius * guard_radius / sp_pow;
    return std::exp(-kPi * params.lambda * sp_pow * num::g_kernel(y, params.alpha));
}

double laplace_interference(const InterferenceTransform& transform, double s) {
    return transform(s);
}

double coverage_probability(const SystemParams& params, double sinr_threshold,
                            const num::QuadratureSpec& spec) {
    if (!(sinr_threshold > 0.0)) throw std::invalid_argument("sinr_threshold must be positive");
    if (params.noise > 0.0 && params.rho == 0.0) {
        throw std::invalid_argument("rho must be positive when noise is positive");
    }

    const double lambda = params.lambda;
    const double noise_scale =
        params.noise > 0.0 ? sinr_threshold * params.noise / (params.rho * params.power) : 0.0;

    auto integrand = [&](double u) {
        const double base = std::exp(-u);
        if (base == 0.0) return 0.0;
        const double r = std::sqrt(u / (kPi * lambda));
        const double r_alpha = std::pow(r, params.alpha);
        double value = base;
        if (noise_scale > 0.0) {
            value *= std::exp(-noise_scale * r_alpha);
            if (value == 0.0) return 0.0;
        }
        const InterferenceTransform t{params, r};
        return value * t(sinr_threshold * r_alpha / params.power);
    };

    auto result = num::integrate(integrand, 0.0, std::numeric_limits<double>::infinity(), spec);
    if (!result.converged) {
        throw num::numerical_error("coverage quadrature did not converge");
    }
    return std::clamp(result.value, 0.0, 1.0);
}

double coverage_probability_closed_alpha4(double sinr_threshold) {
    if (!(sinr_threshold > 0.0)) throw std::invalid_argument("sinr_threshold must be positive");
    const double root = std::sqrt(sinr_threshold);
    return 1.0 / (1.0 + root * (kPi / 2.0 - std::atan(1.0 / root)));
}

double interference_cdf_at_origin(const SystemParams& params, double x,
                                  const num::InverseLaplaceSpec& spec) {
    if (!(x > 0.0)) throw std::invalid_argument("interference CDF requires x > 0");
    const auto [c, beta] = origin_transform(params);

    // Chernoff bound on the lower tail: F(x) <= min_s e^{s x} L(s). When the
    // bound is below 1e-14 the answer is 0 to working precision, and the
    // inversion contour would overflow there for 2 < alpha < 4.
    const double s_star = std::pow(x / (c * beta), 1.0 / (beta - 1.0));
    if (s_star * x - c * std::pow(s_star, beta) < -32.24) return 0.0;

    auto transform = [c, beta](std::complex<double> s) {
        return std::exp(-c * std::pow(s, beta));
    };
    return num::inverse_laplace_cdf(transform, x, spec);
}

double interference_cdf_closed_alpha4(double lambda, double power, double x) {
    if (x <= 0.0) return 0.0;
    return num::erfc(kPi * kPi * lambda * std::sqrt(power) / (4.0 * std::sqrt(x)));
}

double eeh_probability(const EehQuery& query, const num::InverseLaplaceSpec& spec) {
    if (!(query.theta > 0.0)) throw std::invalid_argument("theta must be positive");
    const auto& p = query.params;
    // Harvested power includes the noise term; once theta is at or below it,
    // any interference at all pushes the harvest over the threshold.
    if (query.theta <= p.noise) return 1.0;

    const double x_idle = query.theta - p.noise;
    const double f_idle = interference_cdf_at_origin(p, x_idle, spec);
    // rho = 1 leaves no RF power at the active-state harvester, so the
    // active term saturates (the CDF is evaluated in its x -> inf limit).
    const double f_active =
        p.rho == 1.0 ? 1.0 : interference_cdf_at_origin(p, x_idle / (1.0 - p.rho), spec);

    const double value = 1.0 - p.epsilon * f_active - (1.0 - p.epsilon) * f_idle;
    return std::clamp(value, 0.0, 1.0);
}

double eeh_probability_closed_alpha4(const EehQuery& query) {
    const auto& p = query.params;
    if (p.alpha != 4.0 || p.noise != 0.0) {
        throw std::invalid_argument("closed form requires alpha = 4 and zero noise");
    }
    if (!(query.theta > 0.0)) throw std::invalid_argument("theta must be positive");
    const double scale = kPi * kPi * p.lambda / 4.0;
    return p.epsilon * num::erf(scale * std::sqrt(p.power * (1.0 - p.rho) / query.theta)) +
           (1.0 - p.epsilon) * num::erf(scale * std::sqrt(p.power / query.theta));
}

double eeh_closed_standard(double lambda_s, double rho, double epsilon, double theta) {
    if (lambda_s < 0.0) throw std::invalid_argument("lambda_s must be nonnegative");
    if (!(theta > 0.0)) throw std::invalid_argument("theta must be positive");
    const double scale = kPi * kPi * lambda_s / 4.0;
    return epsilon * num::erf(scale * std::sqrt((1.0 - rho) / theta)) +
           (1.0 - epsilon) * num::erf(scale * std::sqrt(1.0 / theta));
}

}  // namespace siet
