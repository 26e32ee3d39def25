#pragma once

#include "siet/core_model.hpp"
#include "siet/numerics.hpp"

// Closed-form and quadrature evaluation of the network's probability laws:
// nearest-base-station distance, the Laplace transform of aggregate
// interference, SINR coverage probability, the interference CDF at the
// origin, and the efficient-energy-harvesting (EEH) probability.

namespace siet {

// Laplace transform of the interference received at the origin from base
// stations farther than guard_radius:
//   L(s) = exp[-pi*lambda*(s*P)^(2/alpha) * G(r^2 * (s*P)^(-2/alpha))].
struct InterferenceTransform {
    SystemParams params;
    double guard_radius = 0.0;  // r [m], >= 0

    double operator()(double s) const;
};

struct EehQuery {
    SystemParams params;
    double theta;  // harvesting-usability threshold [W], > 0
};

// Density of the distance to the nearest base station:
//   f_r(r) = exp(-lambda*pi*r^2) * 2*pi*lambda*r.
double nearest_distance_pdf(double r, double lambda);

double laplace_interference(const InterferenceTransform& transform, double s);

// Plane-averaged probability that the SINR from the nearest base station
// exceeds the threshold, by one-dimensional quadrature of the conditional
// exceedance against the nearest-distance law. The integration variable is
// u = pi*lambda*r^2, which makes the zero-noise integrand density-free.
double coverage_probability(const SystemParams& params, double sinr_threshold,
                            const num::QuadratureSpec& spec = {});

// Zero-noise, alpha = 4 closed form:
//   P_c(T) = 1 / (1 + sqrt(T) * (pi/2 - arctan(1/sqrt(T)))).
// Independent of density and of the splitting factor.
double coverage_probability_closed_alpha4(double sinr_threshold);

// CDF of the aggregate interference at the origin, recovered by numerically
// inverting its Laplace transform divided by s. Deep-left-tail arguments
// where min_s e^{s x} L(s) < 1e-14 short-circuit to 0 before inversion.
double interference_cdf_at_origin(const SystemParams& params, double x,
                                  const num::InverseLaplaceSpec& spec = {});

// alpha = 4 closed form of the same CDF (one-sided stable law):
//   F(x) = erfc(pi^2 * lambda * sqrt(P) / (4 * sqrt(x))).
double interference_cdf_closed_alpha4(double lambda, double power, double x);

// P[harvested power > theta], averaged over the user state:
//   1 - eps * F((theta - sigma^2)/(1 - rho)) - (1 - eps) * F(theta - sigma^2)
// with F the interference CDF at the origin. Returns exactly 1 when
// theta <= sigma^2; rho = 1 zeroes the active-state contribution.
double eeh_probability(const EehQuery& query, const num::InverseLaplaceSpec& spec = {});

// alpha = 4, zero-noise closed form:
//   eps * erf((pi^2 lambda / 4) sqrt(P(1-rho)/theta))
//   + (1-eps) * erf((pi^2 lambda / 4) sqrt(P/theta)).
// Strictly increasing in lambda*sqrt(P). Throws unless alpha = 4, noise = 0.
double eeh_probability_closed_alpha4(const EehQuery& query);

// Same closed form at unit transmit power, as a plain function of the
// density; accepts lambda_s = 0 (yielding 0) so sweeps can touch the axis.
double eeh_closed_standard(double lambda_s, double rho, double epsilon, double theta);

}  // namespace siet
