#include "relaysim/montecarlo.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <thread>

namespace relaysim {
namespace {

constexpr std::uint64_t kBatchSize = 8192;

unsigned resolve_workers(unsigned requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("RELAYSIM_WORKERS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<unsigned>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

double evaluate_snr(const RelayRealization& real, const ScenarioParams& params,
                    StrategyKind strategy, std::uint64_t chosen) {
    switch (strategy) {
        case StrategyKind::DirectOnly:
            return snr_direct(real, params);
        case StrategyKind::RandomRelay:
            return real.relay_count() == 0
                       ? snr_direct(real, params)
                       : snr_random_relay(real, params, static_cast<std::size_t>(chosen));
        case StrategyKind::ClosestRelay:
            return real.relay_count() == 0
                       ? snr_direct(real, params)
                       : snr_random_relay(real, params, select_closest_relay(real));
        case StrategyKind::DistributedBeamforming:
            return snr_beamforming(real, params);
    }
    return 0.0;
}

void run_batches(const ScenarioParams& params, const Disc& disc, const PppConfig& ppp,
                 std::span<const StrategyKind> strategies, Conditioning conditioning,
                 std::uint64_t runs, std::uint64_t seed, unsigned workers,
                 std::vector<std::uint64_t>& outage_counts) {
    const double mean_measure = ppp.mean_measure(disc);
    std::atomic<std::uint64_t> next_batch{0};
    std::vector<std::atomic<std::uint64_t>> totals(strategies.size());
    for (auto& t : totals) t.store(0);

    auto worker = [&] {
        RelayRealization real;
        std::vector<std::uint64_t> local(strategies.size(), 0);
        for (;;) {
            const std::uint64_t batch = next_batch.fetch_add(1);
            const std::uint64_t lo = batch * kBatchSize;
            if (lo >= runs) break;
            const std::uint64_t hi = std::min(runs, lo + kBatchSize);
            for (std::uint64_t trial = lo; trial < hi; ++trial) {
                TrialRng rng(seed, trial);

                std::uint64_t n = 0;
                switch (conditioning.kind) {
                    case Conditioning::Kind::Unconditional:
                        n = rng.next_poisson(mean_measure);
                        break;
                    case Conditioning::Kind::GivenAtLeastOne:
                        do {
                            n = rng.next_poisson(mean_measure);
                        } while (n == 0);
                        break;
                    case Conditioning::Kind::FixedCount:
                        n = conditioning.fixed_count;
                        break;
                }
                sample_uniform_relays_into(disc, n, rng, real.relays);
                fill_fading(real, disc, params, rng);
                // Selection is drawn after all channel draws, so it never
                // perturbs the shared realization stream.
                const std::uint64_t chosen = n > 0 ? rng.next_index(n) : 0;

                for (std::size_t s = 0; s < strategies.size(); ++s) {
                    const double snr = evaluate_snr(real, params, strategies[s], chosen);
                    if (outage_event(snr, params)) ++local[s];
                }
            }
        }
        for (std::size_t s = 0; s < strategies.size(); ++s)
            totals[s].fetch_add(local[s]);
    };

    const unsigned thread_count = static_cast<unsigned>(
        std::min<std::uint64_t>(workers, (runs + kBatchSize - 1) / kBatchSize));
    if (thread_count <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(thread_count);
        for (unsigned t = 0; t < thread_count; ++t) pool.emplace_back(worker);
    }

    outage_counts.resize(strategies.size());
    for (std::size_t s = 0; s < strategies.size(); ++s) outage_counts[s] = totals[s].load();
}

}  // namespace

const char* Conditioning::name() const noexcept {
    switch (kind) {
        case Kind::Unconditional: return "unconditional";
        case Kind::GivenAtLeastOne: return "given_n_at_least_1";
        case Kind::FixedCount: return "fixed_n";
    }
    return "unknown";
}

std::vector<OutageEstimate> estimate_outage_multi(
    const ScenarioParams& params, const Disc& disc, const PppConfig& ppp,
    std::span<const StrategyKind> strategies, Conditioning conditioning,
    std::uint64_t runs, std::uint64_t seed, unsigned workers) {
    if (runs < 1) throw std::invalid_argument("estimate_outage: runs must be >= 1");
    if (conditioning.kind == Conditioning::Kind::GivenAtLeastOne &&
        !(ppp.mean_measure(disc) > 0.0))
        throw std::invalid_argument(
            "estimate_outage: cannot condition on N >= 1 with zero intensity");
    for (StrategyKind s : strategies)
        if (s == StrategyKind::ClosestRelay &&
            conditioning.kind == Conditioning::Kind::FixedCount &&
            conditioning.fixed_count == 0)
            throw std::invalid_argument(
                "estimate_outage: closest-relay strategy needs at least one relay");

    std::vector<std::uint64_t> counts;
    run_batches(params, disc, ppp, strategies, conditioning, runs, seed,
                resolve_workers(workers), counts);

    std::vector<OutageEstimate> out(strategies.size());
    for (std::size_t s = 0; s < strategies.size(); ++s) {
        OutageEstimate& est = out[s];
        est.p_hat = static_cast<double>(counts[s]) / static_cast<double>(runs);
        est.std_error = std::sqrt(est.p_hat * (1.0 - est.p_hat) / static_cast<double>(runs));
        est.runs = runs;
        est.seed = seed;
        est.conditioning = conditioning;
    }
    return out;
}

OutageEstimate estimate_outage(const ScenarioParams& params, const Disc& disc,
                               const PppConfig& ppp, StrategyKind strategy,
                               Conditioning conditioning, std::uint64_t runs,
                               std::uint64_t seed, unsigned workers) {
    const StrategyKind one[] = {strategy};
    return estimate_outage_multi(params, disc, ppp, one, conditioning, runs, seed,
                                 workers)[0];
}

double diversity_slope(const SnrSweep& sweep, double window_lo_db, double window_hi_db) {
    std::vector<double> xs, ys;
    for (const SweepPoint& pt : sweep.points) {
        if (pt.snr_db < window_lo_db || pt.snr_db > window_hi_db) continue;
        if (!(pt.estimate.p_hat > 0.0)) continue;
        xs.push_back(pt.snr_db / 10.0);  // log10 of linear SNR
        ys.push_back(-std::log10(pt.estimate.p_hat));
    }
    if (xs.size() < 3)
        throw std::invalid_argument(
            "diversity_slope: need at least 3 points with positive outage in window");

    const std::size_t n = xs.size();
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    const double denom = static_cast<double>(n) * sxx - sx * sx;
    return (static_cast<double>(n) * sxy - sx * sy) / denom;
}

}  // namespace relaysim
