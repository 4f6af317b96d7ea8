#ifndef RELAYSIM_CHANNEL_HPP
#define RELAYSIM_CHANNEL_HPP

#include <cmath>

namespace relaysim {

/// Physical constants of one run. Noise variance is normalized to 1, so
/// `power` is both the transmit power and the transmit SNR.
struct ScenarioParams {
    double power;                  // P, linear
    double rate;                   // R, bits per channel use
    double path_loss_exponent;     // alpha
    double harvesting_efficiency;  // eta in (0, 1]
    double slot_duration = 1.0;    // T, seconds; cancels in the relay power

    ScenarioParams(double power_linear, double rate_bpcu, double alpha, double eta,
                   double slot_seconds = 1.0);

    /// tau = 2^(2R) - 1, the SNR a rate-R codeword needs over two slots.
    double snr_threshold() const noexcept { return snr_threshold_; }

    /// epsilon = tau / P, the decode threshold on normalized gains.
    double decode_threshold() const noexcept { return snr_threshold_ / power; }

    ScenarioParams with_power(double power_linear) const {
        return ScenarioParams(power_linear, rate, path_loss_exponent,
                              harvesting_efficiency, slot_duration);
    }

    static double db_to_linear(double db) noexcept { return std::pow(10.0, db / 10.0); }

  private:
    double snr_threshold_;
};

/// Bounded path-loss gain 1/(1 + distance^alpha); equals 1 at zero distance.
inline double path_gain(double distance, double alpha) noexcept {
    if (alpha == 2.0) return 1.0 / (1.0 + distance * distance);
    return 1.0 / (1.0 + std::pow(distance, alpha));
}

/// Power-splitting coefficient: the fraction of the observation diverted to
/// the harvesting circuit after decoding at rate R is assured.
/// theta = max{0, 1 - (1 + d_i^alpha) * tau / (P * |h|^2)}; a zero-rate
/// target yields theta = 1 (everything harvests).
double splitting_coefficient(const ScenarioParams& params, double source_fading_pow,
                             double source_relay_distance);

/// Relay transmit power available in the second slot:
/// eta * (x*P - tau) when the relay decodes (x > epsilon), else 0.
inline double harvested_relay_power(const ScenarioParams& params,
                                    double normalized_gain) noexcept {
    const double surplus = normalized_gain * params.power - params.snr_threshold();
    return surplus > 0.0 ? params.harvesting_efficiency * surplus : 0.0;
}

}  // namespace relaysim

#endif
