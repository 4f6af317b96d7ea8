#include "relaysim/geometry.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace relaysim {

Disc::Disc(double radius_m, double dest_distance_m)
    : radius(radius_m), dest_distance(dest_distance_m) {
    if (!(radius > 0.0)) throw std::invalid_argument("Disc: radius must be > 0");
    if (!(dest_distance > 0.0))
        throw std::invalid_argument("Disc: dest_distance must be > 0");
}

PppConfig::PppConfig(double intensity_per_m2) : intensity(intensity_per_m2) {
    if (!(intensity >= 0.0))
        throw std::invalid_argument("PppConfig: intensity must be >= 0");
}

double PppConfig::mean_measure(const Disc& disc) const noexcept {
    return std::numbers::pi * disc.radius * disc.radius * intensity;
}

RelayLocation RelayLocation::from_polar(double r, double phi, const Disc& disc) noexcept {
    const double d = disc.dest_distance;
    const double c2 = r * r + d * d - 2.0 * r * d * std::cos(phi);
    // c2 >= (d-r)^2 >= 0 analytically; guard the rounding case.
    return RelayLocation{r, phi, std::sqrt(c2 > 0.0 ? c2 : 0.0)};
}

void sample_uniform_relays_into(const Disc& disc, std::uint64_t count, TrialRng& rng,
                                std::vector<RelayLocation>& out) {
    out.clear();
    out.reserve(count);
    constexpr double two_pi = 2.0 * std::numbers::pi;
    for (std::uint64_t i = 0; i < count; ++i) {
        const double r = disc.radius * std::sqrt(rng.next_uniform());
        const double phi = two_pi * rng.next_uniform();
        out.push_back(RelayLocation::from_polar(r, phi, disc));
    }
}

void sample_ppp_into(const Disc& disc, const PppConfig& ppp, TrialRng& rng,
                     std::vector<RelayLocation>& out) {
    const std::uint64_t n = rng.next_poisson(ppp.mean_measure(disc));
    sample_uniform_relays_into(disc, n, rng, out);
}

std::vector<RelayLocation> sample_ppp(const Disc& disc, const PppConfig& ppp,
                                      std::uint64_t seed) {
    TrialRng rng(seed, 0);
    std::vector<RelayLocation> out;
    sample_ppp_into(disc, ppp, rng, out);
    return out;
}

double nearest_relay_distance_pdf(double r, const PppConfig& ppp, const Disc& disc) {
    if (!(ppp.intensity > 0.0))
        throw std::domain_error("nearest_relay_distance_pdf: undefined for zero intensity");
    if (r < 0.0 || r > disc.radius) return 0.0;
    const double pl = std::numbers::pi * ppp.intensity;
    const double zeta = 1.0 / (1.0 - std::exp(-pl * disc.radius * disc.radius));
    return 2.0 * zeta * pl * r * std::exp(-pl * r * r);
}

}  // namespace relaysim
