#ifndef RELAYSIM_RNG_HPP
#define RELAYSIM_RNG_HPP

#include <cmath>
#include <cstdint>

namespace relaysim {

/// Counter-based random stream keyed by (seed, stream index).
///
/// Each Monte Carlo trial owns an independent stream, so results do not
/// depend on how trials are distributed over workers. The generator is
/// splitmix64 with a double-mixed initial state; successive streams are
/// decorrelated by the same finalizer.
class TrialRng {
  public:
    TrialRng(std::uint64_t seed, std::uint64_t stream) noexcept
        : state_(mix(mix(seed ^ 0x243f6a8885a308d3ull) + stream)) {}

    std::uint64_t next_u64() noexcept {
        state_ += 0x9e3779b97f4a7c15ull;
        return mix(state_);
    }

    /// Uniform draw in [0, 1) with 53 random bits.
    double next_uniform() noexcept {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Unit-mean exponential draw; strictly positive and finite.
    double next_exponential() noexcept {
        return -std::log1p(-next_uniform());
    }

    /// Poisson draw by Knuth's product method, chunked so the
    /// acceptance threshold never underflows.
    std::uint64_t next_poisson(double mean) noexcept {
        std::uint64_t total = 0;
        while (mean > 100.0) {
            total += poisson_small(100.0);
            mean -= 100.0;
        }
        if (mean > 0.0) total += poisson_small(mean);
        return total;
    }

    /// Uniform integer in [0, n).
    std::uint64_t next_index(std::uint64_t n) noexcept {
        // 64-bit multiply-shift; bias is negligible for the n used here.
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
    }

  private:
    static std::uint64_t mix(std::uint64_t z) noexcept {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    std::uint64_t poisson_small(double mean) noexcept {
        const double limit = std::exp(-mean);
        std::uint64_t k = 0;
        double product = next_uniform();
        while (product > limit) {
            ++k;
            product *= next_uniform();
        }
        return k;
    }

    std::uint64_t state_;
};

}  // namespace relaysim

#endif
