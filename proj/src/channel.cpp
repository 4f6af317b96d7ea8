#include "relaysim/channel.hpp"

#include <stdexcept>

namespace relaysim {

ScenarioParams::ScenarioParams(double power_linear, double rate_bpcu, double alpha,
                               double eta, double slot_seconds)
    : power(power_linear),
      rate(rate_bpcu),
      path_loss_exponent(alpha),
      harvesting_efficiency(eta),
      slot_duration(slot_seconds) {
    if (!(power > 0.0)) throw std::invalid_argument("ScenarioParams: power must be > 0");
    if (!(rate >= 0.0)) throw std::invalid_argument("ScenarioParams: rate must be >= 0");
    if (!(alpha >= 2.0))
        throw std::invalid_argument("ScenarioParams: path_loss_exponent must be >= 2");
    if (!(eta > 0.0 && eta <= 1.0))
        throw std::invalid_argument("ScenarioParams: harvesting_efficiency must be in (0, 1]");
    if (!(slot_duration > 0.0))
        throw std::invalid_argument("ScenarioParams: slot_duration must be > 0");
    snr_threshold_ = std::exp2(2.0 * rate) - 1.0;
}

double splitting_coefficient(const ScenarioParams& params, double source_fading_pow,
                             double source_relay_distance) {
    if (source_fading_pow < 0.0)
        throw std::invalid_argument("splitting_coefficient: fading power must be >= 0");
    const double tau = params.snr_threshold();
    if (tau == 0.0) return 1.0;
    if (source_fading_pow == 0.0) return 0.0;
    const double needed = (1.0 + std::pow(source_relay_distance, params.path_loss_exponent)) *
                          tau / (params.power * source_fading_pow);
    const double theta = 1.0 - needed;
    return theta > 0.0 ? theta : 0.0;
}

}  // namespace relaysim
