#ifndef RELAYSIM_STRATEGIES_HPP
#define RELAYSIM_STRATEGIES_HPP

#include <cstddef>
#include <vector>

#include "relaysim/channel.hpp"
#include "relaysim/geometry.hpp"
#include "relaysim/rng.hpp"

namespace relaysim {

/// How the available relays are used in the second slot.
enum class StrategyKind {
    RandomRelay,             // pick one relay uniformly, no CSI
    ClosestRelay,            // pick the relay nearest the source
    DistributedBeamforming,  // every decoding relay joins a coherent sum
    DirectOnly,              // non-cooperative baseline
};

const char* strategy_name(StrategyKind kind) noexcept;

/// One sampled network: relay positions, fading powers, and the normalized
/// gains the outage events are written in (x0, x_i, y_i).
struct RelayRealization {
    std::vector<RelayLocation> relays;
    std::vector<double> source_fading;  // |h_i|^2
    std::vector<double> dest_fading;    // |g_i|^2
    double direct_fading = 0.0;         // |h_d|^2

    double direct_gain = 0.0;           // x0 = |h_d|^2 / (1 + d^alpha)
    std::vector<double> source_gain;    // x_i = |h_i|^2 / (1 + d_i^alpha)
    std::vector<double> dest_gain;      // y_i = |g_i|^2 / (1 + c_i^alpha)

    std::size_t relay_count() const noexcept { return relays.size(); }

    /// A relay is qualified when it can decode the source message: x_i > epsilon.
    bool qualified(std::size_t i, const ScenarioParams& params) const noexcept {
        return source_gain[i] * params.power > params.snr_threshold();
    }
};

/// Draws fadings for already-sampled relay positions and fills the
/// normalized gains. Draw order is fixed (|h_d|^2, then per relay |h|^2 and
/// |g|^2) so that runs with equal seeds share realizations across strategies.
void fill_fading(RelayRealization& real, const Disc& disc, const ScenarioParams& params,
                 TrialRng& rng);

/// Destination SNR with only the direct link: P * x0.
inline double snr_direct(const RelayRealization& real,
                         const ScenarioParams& params) noexcept {
    return params.power * real.direct_gain;
}

/// Destination SNR after MRC when the chosen relay forwards with its
/// harvested power; falls back to the direct link when the relay cannot
/// decode.
inline double snr_random_relay(const RelayRealization& real, const ScenarioParams& params,
                               std::size_t chosen) noexcept {
    return snr_direct(real, params) +
           real.dest_gain[chosen] * harvested_relay_power(params, real.source_gain[chosen]);
}

/// Index of the relay nearest the source; ties break to the lowest index.
/// Throws std::invalid_argument on an empty relay set.
std::size_t select_closest_relay(const RelayRealization& real);

/// Destination SNR under distributed beamforming over the qualified set;
/// an empty qualified set degrades to the direct link.
inline double snr_beamforming(const RelayRealization& real,
                              const ScenarioParams& params) noexcept {
    double snr = snr_direct(real, params);
    for (std::size_t i = 0; i < real.relay_count(); ++i)
        snr += real.dest_gain[i] * harvested_relay_power(params, real.source_gain[i]);
    return snr;
}

/// Beamforming power normalization xi = sum over qualified relays of
/// |g_i|^2 P_ri / (1 + c_i^alpha). It cancels in the destination SNR and is
/// exposed only so the per-relay transmit-power feasibility can be checked.
double beamforming_normalization(const RelayRealization& real, const ScenarioParams& params);

/// Outage: the two-slot SNR cannot support rate R, i.e. snr < tau.
/// Boundary equality supports the rate.
inline bool outage_event(double snr, const ScenarioParams& params) noexcept {
    return snr < params.snr_threshold();
}

}  // namespace relaysim

#endif
