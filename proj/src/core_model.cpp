#include "siet/core_model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace siet {

namespace {

[[noreturn]] void fail(const std::string& message) {
    throw std::invalid_argument(message);
}

}  // namespace

SystemParams validate(const SystemParams& params) {
    if (!(params.lambda > 0.0)) fail("lambda must be positive");
    if (!(params.power > 0.0)) fail("power must be positive");
    if (!(params.alpha > 2.0)) fail("alpha must exceed 2");
    if (!(params.noise >= 0.0)) fail("noise must be nonnegative");
    if (!(params.rho >= 0.0 && params.rho <= 1.0)) fail("rho out of [0,1]");
    if (!(params.epsilon >= 0.0 && params.epsilon <= 1.0)) fail("epsilon out of [0,1]");
    return params;
}

Thresholds validate(const Thresholds& thresholds) {
    if (!(thresholds.sinr_threshold > 0.0)) fail("sinr_threshold must be positive");
    if (!(thresholds.eeh_threshold > 0.0)) fail("eeh_threshold must be positive");
    return thresholds;
}

double instantaneous_sinr(double fade, double distance, double interference,
                          const SystemParams& params) {
    if (!(distance > 0.0)) throw std::domain_error("distance must be positive");
    if (fade < 0.0) throw std::domain_error("fade must be nonnegative");
    if (interference < 0.0) throw std::domain_error("interference must be nonnegative");

    const double denominator = params.noise + params.rho * interference;
    if (denominator == 0.0) throw std::domain_error("SINR undefined: zero denominator");

    const double signal = params.rho * fade * std::pow(distance, -params.alpha);
    return signal / denominator;
}

}  // namespace siet
