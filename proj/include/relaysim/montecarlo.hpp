#ifndef RELAYSIM_MONTECARLO_HPP
#define RELAYSIM_MONTECARLO_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "relaysim/channel.hpp"
#include "relaysim/geometry.hpp"
#include "relaysim/strategies.hpp"

namespace relaysim {

/// How the relay count of each trial is drawn.
struct Conditioning {
    enum class Kind { Unconditional, GivenAtLeastOne, FixedCount };

    Kind kind = Kind::Unconditional;
    std::uint64_t fixed_count = 0;

    static Conditioning unconditional() noexcept { return {Kind::Unconditional, 0}; }
    static Conditioning given_at_least_one() noexcept { return {Kind::GivenAtLeastOne, 0}; }
    static Conditioning fixed(std::uint64_t count) noexcept {
        return {Kind::FixedCount, count};
    }

    const char* name() const noexcept;
};

struct OutageEstimate {
    double p_hat = 0.0;
    double std_error = 0.0;  // sqrt(p(1-p)/runs)
    std::uint64_t runs = 0;
    std::uint64_t seed = 0;
    Conditioning conditioning;
};

/// Estimates the outage probability of one strategy by independent trials.
/// Trials are keyed by (seed, trial index), so the estimate is bit-identical
/// for any worker count. `workers` = 0 picks RELAYSIM_WORKERS or the
/// hardware concurrency.
OutageEstimate estimate_outage(const ScenarioParams& params, const Disc& disc,
                               const PppConfig& ppp, StrategyKind strategy,
                               Conditioning conditioning, std::uint64_t runs,
                               std::uint64_t seed, unsigned workers = 0);

/// Same, but evaluates several strategies on shared realizations (common
/// random numbers), one estimate per strategy in input order.
std::vector<OutageEstimate> estimate_outage_multi(
    const ScenarioParams& params, const Disc& disc, const PppConfig& ppp,
    std::span<const StrategyKind> strategies, Conditioning conditioning,
    std::uint64_t runs, std::uint64_t seed, unsigned workers = 0);

struct SweepPoint {
    double snr_db = 0.0;
    OutageEstimate estimate;
};

/// Outage-versus-SNR curve for one strategy; snr_db strictly increasing.
struct SnrSweep {
    StrategyKind strategy = StrategyKind::DirectOnly;
    std::vector<SweepPoint> points;
};

/// Least-squares slope of -log10(p_hat) against log10(P) over the points
/// whose snr_db lies in [window_lo_db, window_hi_db] and whose p_hat is
/// positive. Throws std::invalid_argument when fewer than three such points
/// exist (the window cannot resolve a decay rate).
double diversity_slope(const SnrSweep& sweep, double window_lo_db, double window_hi_db);

}  // namespace relaysim

#endif
