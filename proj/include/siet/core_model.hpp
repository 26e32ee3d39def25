#pragma once

// Network and receiver parameter types shared by every other component,
// plus the instantaneous SINR definition they all agree on.

namespace siet {

// Homogeneous-network parameter set. All quantities in SI units.
struct SystemParams {
    double lambda;   // base-station density [BS/m^2]
    double power;    // base-station transmit power P [W]
    double alpha;    // path-loss exponent, must exceed 2
    double noise;    // receiver noise power sigma^2 [W]
    double rho;      // power-splitting factor (fraction fed to the decoder), in [0,1]
    double epsilon;  // probability the user is active, in [0,1]

    // Fading marks are exponential with mean `power`; the rate is never
    // stored separately so it cannot drift out of sync.
    double fading_rate() const { return 1.0 / power; }
};

enum class UserState { Active, Idle };

struct Thresholds {
    double sinr_threshold;  // T, linear SINR ratio, > 0
    double eeh_threshold;   // Theta [W], > 0
};

// Returns the input unchanged iff every invariant holds; otherwise throws
// std::invalid_argument naming the first violated invariant.
SystemParams validate(const SystemParams& params);
Thresholds validate(const Thresholds& thresholds);

// SINR of a receiver at `distance` from its serving base station:
//   rho * fade * distance^-alpha / (noise + rho * interference)
// `fade` carries the transmit power (exponential with mean P), so no extra
// power factor appears here. Throws std::domain_error when the denominator
// vanishes or distance is not positive.
double instantaneous_sinr(double fade, double distance, double interference,
                          const SystemParams& params);

}  // namespace siet
