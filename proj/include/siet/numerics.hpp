#pragma once

#include <complex>
#include <functional>
#include <stdexcept>

// Numerical kernels: error-function family, the path-loss tail kernel G,
// globally adaptive Gauss-Kronrod quadrature, numerical inverse Laplace
// transforms (fixed Talbot and Euler summation), and monotone root search.
// Everything here is a pure function of its inputs.

namespace siet::num {

// A numerical routine failed to deliver its accuracy contract.
struct numerical_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A root bracket did not straddle the target.
struct bracket_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct QuadratureSpec {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    int max_subdivisions = 200;
};

enum class InversionMethod { FixedTalbot, EulerSummation };

struct InverseLaplaceSpec {
    InversionMethod method = InversionMethod::FixedTalbot;
    int node_count = 32;  // contour / summation nodes, >= 8
};

double erf(double x);
double erfc(double x);

struct IntegralResult {
    double value = 0.0;
    double error = 0.0;  // estimated absolute error bound
    int subdivisions = 0;
    bool converged = false;
};

// Adaptive 15-point Gauss-Kronrod integration of f over [a, b]; pass
// b = infinity for a decaying improper integral (mapped onto [0,1) by
// x = a + t/(1-t)). Non-convergence is reported in the result, not thrown.
IntegralResult integrate(const std::function<double(double)>& f, double a, double b,
                         const QuadratureSpec& spec = {});

// G(y) = integral_y^inf dx / (1 + x^(alpha/2)), for alpha > 2.
// The alpha = 4 branch is closed form; other alphas use the quadrature
// path below. Throws numerical_error for alpha <= 2 (divergent).
double g_kernel(double y, double alpha);

// Integral-definition evaluation of G(y): adaptive quadrature on
// [y, min(Y, split)] plus an alternating tail series beyond the split.
double g_kernel_by_quadrature(double y, double alpha, const QuadratureSpec& spec = {});

// G(0) = (2*pi/alpha) * csc(2*pi/alpha).
double g_kernel_zero(double alpha);

using laplace_fn = std::function<std::complex<double>(std::complex<double>)>;

// Given the Laplace transform L of a probability density on [0, inf),
// evaluates the CDF at x > 0 by inverting L(s)/s. Results are clamped to
// [0, 1]; excursions beyond 1e-4 or disagreement between successive node
// counts raise numerical_error (contour oscillation).
double inverse_laplace_cdf(const laplace_fn& transform, double x,
                           const InverseLaplaceSpec& spec = {});

// Solves f(x) = target by bisection on [lo, hi] for monotone f; returns x
// with |f(x) - target| <= tol (or the bracket collapsed to roundoff).
// Throws bracket_error when f(lo) and f(hi) do not straddle the target.
double find_root_monotone(const std::function<double(double)>& f, double target,
                          double lo, double hi, double tol);

}  // namespace siet::num
