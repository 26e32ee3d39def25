#include "siet/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

namespace siet::num {

namespace {

constexpr double kPi = std::numbers::pi;

// 15-point Kronrod nodes on [-1,1] (positive half; last entry is the
// centre) and weights, with the embedded 7-point Gauss weights.
constexpr double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.0};
constexpr double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
constexpr double kWg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

struct PanelResult {
    double value;
    double error;
};

PanelResult gauss_kronrod_15(const std::function<double(double)>& f, double a, double b) {
    const double centre = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    double fv1[7], fv2[7];
    const double fc = f(centre);

    double resg = kWg[3] * fc;
    double resk = kWgk[7] * fc;
    double resabs = std::abs(resk);
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        fv1[j] = f(centre - dx);
        fv2[j] = f(centre + dx);
        const double sum = fv1[j] + fv2[j];
        resk += kWgk[j] * sum;
        resabs += kWgk[j] * (std::abs(fv1[j]) + std::abs(fv2[j]));
        if (j % 2 == 1) resg += kWg[j / 2] * sum;
    }

    const double mean = resk * 0.5;
    double resasc = kWgk[7] * std::abs(fc - mean);
    for (int j = 0; j < 7; ++j) {
        resasc += kWgk[j] * (std::abs(fv1[j] - mean) + std::abs(fv2[j] - mean));
    }
    resasc *= std::abs(half);
    resabs *= std::abs(half);

    double err = std::abs((resk - resg) * half);
    if (resasc != 0.0 && err != 0.0) {
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    }
    const double eps = std::numeric_limits<double>::epsilon();
    if (resabs > std::numeric_limits<double>::min() / (50.0 * eps)) {
        err = std::max(err, 50.0 * eps * resabs);
    }
    return {resk * half, err};
}

struct Segment {
    double a, b, value, error;
};

IntegralResult integrate_finite(const std::function<double(double)>& f, double a, double b,
                                const QuadratureSpec& spec) {
    std::vector<Segment> segments;
    auto first = gauss_kronrod_15(f, a, b);
    segments.push_back({a, b, first.value, first.error});

    IntegralResult result;
    result.subdivisions = 1;
    for (;;) {
        double total = 0.0, total_err = 0.0;
        for (const auto& s : segments) {
            total += s.value;
            total_err += s.error;
        }
        result.value = total;
        result.error = total_err;
        const double tol = std::max(spec.abs_tol, spec.rel_tol * std::abs(total));
        if (total_err <= tol) {
            result.converged = true;
            return result;
        }
        if (result.subdivisions >= spec.max_subdivisions) {
            result.converged = false;
            return result;
        }
        auto worst = std::max_element(
            segments.begin(), segments.end(),
            [](const Segment& x, const Segment& y) { return x.error < y.error; });
        const double mid = 0.5 * (worst->a + worst->b);
        if (mid <= worst->a || mid >= worst->b) {
            result.converged = false;  // interval exhausted at roundoff
            return result;
        }
        const Segment old = *worst;
        auto left = gauss_kronrod_15(f, old.a, mid);
        auto right = gauss_kronrod_15(f, mid, old.b);
        *worst = {old.a, mid, left.value, left.error};
        segments.push_back({mid, old.b, right.value, right.error});
        ++result.subdivisions;
    }
}

}  // namespace

double erf(double x) { return std::erf(x); }
double erfc(double x) { return std::erfc(x); }

IntegralResult integrate(const std::function<double(double)>& f, double a, double b,
                         const QuadratureSpec& spec) {
    if (!(spec.rel_tol > 0.0) || spec.abs_tol < 0.0 || spec.max_subdivisions < 1) {
        throw std::invalid_argument("invalid QuadratureSpec");
    }
    if (std::isinf(b)) {
        // x = a + t/(1-t) maps [a, inf) onto [0, 1); nodes never touch t = 1.
        auto g = [&f, a](double t) {
            const double w = 1.0 - t;
            return f(a + t / w) / (w * w);
        };
        return integrate_finite(g, 0.0, 1.0, spec);
    }
    return integrate_finite(f, a, b, spec);
}

double g_kernel_zero(double alpha) {
    if (!(alpha > 2.0)) throw numerical_error("g_kernel diverges for alpha <= 2");
    const double q = 2.0 * kPi / alpha;
    return q / std::sin(q);
}

double g_kernel_by_quadrature(double y, double alpha, const QuadratureSpec& spec) {
    if (!(alpha > 2.0)) throw numerical_error("g_kernel diverges for alpha <= 2");
    if (y < 0.0) throw std::invalid_argument("g_kernel requires y >= 0");

    const double p = 0.5 * alpha;
    // Beyond the split point the integrand is within roundoff of its
    // alternating expansion sum_k (-1)^(k+1) x^(-k p), integrated termwise.
    const double split = 1e3;
    auto tail_series = [p](double from) {
        double tail = 0.0, sign = 1.0;
        for (int k = 1; k <= 12; ++k) {
            const double expo = k * p - 1.0;
            const double term = sign * std::pow(from, -expo) / expo;
            tail += term;
            if (std::abs(term) < 1e-18 * std::max(std::abs(tail), 1e-300)) break;
            sign = -sign;
        }
        return tail;
    };

    if (y >= split) return tail_series(y);

    auto integrand = [p](double x) { return 1.0 / (1.0 + std::pow(x, p)); };
    auto head = integrate(integrand, y, split, spec);
    if (!head.converged) {
        throw numerical_error("g_kernel quadrature did not converge");
    }
    return head.value + tail_series(split);
}

double g_kernel(double y, double alpha) {
    if (!(alpha > 2.0)) throw numerical_error("g_kernel diverges for alpha <= 2");
    if (y < 0.0) throw std::invalid_argument("g_kernel requires y >= 0");
    if (alpha == 4.0) return kPi / 2.0 - std::atan(y);
    if (y == 0.0) return g_kernel_zero(alpha);
    return g_kernel_by_quadrature(y, alpha);
}

namespace {

using cplx = std::complex<double>;

// Fixed-Talbot inversion of L(s)/s at t = x (Abate-Valko contour with
// node_count points). Returns NaN when a contour term is not finite.
double talbot_cdf(const laplace_fn& transform, double x, int node_count) {
    const int m = node_count;
    const double r = 2.0 * m / (5.0 * x);

    const cplx f0 = transform(cplx(r, 0.0)) / cplx(r, 0.0);
    double total = 0.5 * std::exp(r * x) * f0.real();
    for (int k = 1; k < m; ++k) {
        const double theta = k * kPi / m;
        const double cot = std::cos(theta) / std::sin(theta);
        const cplx s(r * theta * cot, r * theta);
        const double sigma = theta + (theta * cot - 1.0) * cot;
        const cplx term = std::exp(s * x) * (transform(s) / s) * cplx(1.0, sigma);
        total += term.real();
        if (!std::isfinite(total)) return std::numeric_limits<double>::quiet_NaN();
    }
    return total * r / m;
}

// Euler-summation inversion (Bromwich trapezoid with binomial averaging of
// the alternating partial sums). Discretization error ~ e^{-A}.
double euler_cdf(const laplace_fn& transform, double x, int node_count) {
    constexpr double kA = 18.4;
    const int m_avg = std::clamp(node_count / 3, 3, 11);
    const int n_burn = std::max(4, node_count - m_avg);

    const double a2x = kA / (2.0 * x);
    const double scale = std::exp(kA / 2.0) / x;
    double running = 0.5 * scale * (transform(cplx(a2x, 0.0)) / cplx(a2x, 0.0)).real();

    std::vector<double> partial;
    partial.reserve(n_burn + m_avg);
    double sign = -1.0;
    for (int k = 1; k <= n_burn + m_avg; ++k) {
        const cplx s(a2x, k * kPi / x);
        running += sign * scale * (transform(s) / s).real();
        partial.push_back(running);
        sign = -sign;
    }

    double acc = 0.0;
    double binom = std::pow(2.0, -m_avg);  // C(m,0) / 2^m, updated in-loop
    for (int j = 0; j <= m_avg; ++j) {
        acc += binom * partial[n_burn - 1 + j];
        binom *= static_cast<double>(m_avg - j) / (j + 1);
    }
    return acc;
}

double invert_once(const laplace_fn& transform, double x, InversionMethod method,
                   int node_count) {
    return method == InversionMethod::FixedTalbot ? talbot_cdf(transform, x, node_count)
                                                  : euler_cdf(transform, x, node_count);
}

}  // namespace

double inverse_laplace_cdf(const laplace_fn& transform, double x,
                           const InverseLaplaceSpec& spec) {
    if (!(x > 0.0)) throw std::invalid_argument("inverse_laplace_cdf requires x > 0");
    if (spec.node_count < 8) throw std::invalid_argument("node_count must be >= 8");

    const double coarse = invert_once(transform, x, spec.method, spec.node_count);
    const double fine = invert_once(transform, x, spec.method, spec.node_count + 8);
    if (!std::isfinite(coarse) || !std::isfinite(fine)) {
        throw numerical_error("inverse Laplace transform overflowed on the inversion contour");
    }
    if (std::abs(fine - coarse) > 5e-6) {
        throw numerical_error("inverse Laplace inversion oscillates between node counts");
    }
    // Excursions beyond [0,1] larger than 1e-4 indicate contour failure;
    // smaller ones are inversion noise and are clamped.
    if (fine < -1e-4 || fine > 1.0 + 1e-4) {
        throw numerical_error("inverse Laplace CDF escaped [0,1]");
    }
    return std::clamp(fine, 0.0, 1.0);
}

double find_root_monotone(const std::function<double(double)>& f, double target,
                          double lo, double hi, double tol) {
    if (!(lo <= hi)) throw std::invalid_argument("find_root_monotone: empty bracket");
    double flo = f(lo) - target;
    double fhi = f(hi) - target;
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0)) {
        throw bracket_error("find_root_monotone: bracket does not straddle target");
    }
    double mid = 0.5 * (lo + hi);
    for (int iter = 0; iter < 200; ++iter) {
        mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;  // bracket collapsed to roundoff
        const double fm = f(mid) - target;
        if (std::abs(fm) <= tol) return mid;
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return mid;
}

}  // namespace siet::num
