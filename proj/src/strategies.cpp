#include "relaysim/strategies.hpp"

#include <stdexcept>

namespace relaysim {

const char* strategy_name(StrategyKind kind) noexcept {
    switch (kind) {
        case StrategyKind::RandomRelay: return "random";
        case StrategyKind::ClosestRelay: return "closest";
        case StrategyKind::DistributedBeamforming: return "beamforming";
        case StrategyKind::DirectOnly: return "direct";
    }
    return "unknown";
}

void fill_fading(RelayRealization& real, const Disc& disc, const ScenarioParams& params,
                 TrialRng& rng) {
    const double alpha = params.path_loss_exponent;
    const std::size_t n = real.relays.size();

    real.direct_fading = rng.next_exponential();
    real.direct_gain = real.direct_fading * path_gain(disc.dest_distance, alpha);

    real.source_fading.clear();
    real.dest_fading.clear();
    real.source_gain.clear();
    real.dest_gain.clear();
    real.source_fading.reserve(n);
    real.dest_fading.reserve(n);
    real.source_gain.reserve(n);
    real.dest_gain.reserve(n);
    for (const RelayLocation& loc : real.relays) {
        const double h2 = rng.next_exponential();
        const double g2 = rng.next_exponential();
        real.source_fading.push_back(h2);
        real.dest_fading.push_back(g2);
        real.source_gain.push_back(h2 * path_gain(loc.source_distance, alpha));
        real.dest_gain.push_back(g2 * path_gain(loc.dest_distance, alpha));
    }
}

std::size_t select_closest_relay(const RelayRealization& real) {
    if (real.relays.empty())
        throw std::invalid_argument("select_closest_relay: no relays in realization");
    std::size_t best = 0;
    for (std::size_t i = 1; i < real.relays.size(); ++i)
        if (real.relays[i].source_distance < real.relays[best].source_distance) best = i;
    return best;
}

double beamforming_normalization(const RelayRealization& real,
                                 const ScenarioParams& params) {
    double xi = 0.0;
    for (std::size_t i = 0; i < real.relay_count(); ++i) {
        const double p_ri = harvested_relay_power(params, real.source_gain[i]);
        if (p_ri > 0.0) xi += real.dest_gain[i] * p_ri;
    }
    return xi;
}

}  // namespace relaysim
