#ifndef RELAYSIM_GEOMETRY_HPP
#define RELAYSIM_GEOMETRY_HPP

#include <cstdint>
#include <vector>

#include "relaysim/rng.hpp"

namespace relaysim {

/// Deployment disc: the source sits at the origin, the destination on the
/// positive x-axis at distance `dest_distance`. Relay angles are measured
/// from the source-destination axis.
struct Disc {
    double radius;         // R_D, metres
    double dest_distance;  // d, metres

    Disc(double radius_m, double dest_distance_m);
};

/// Homogeneous Poisson point process over a disc.
struct PppConfig {
    double intensity;  // relays per square metre

    explicit PppConfig(double intensity_per_m2);

    double mean_measure(const Disc& disc) const noexcept;
};

/// One relay position in polar coordinates, with the relay-destination
/// distance precomputed from the law of cosines.
struct RelayLocation {
    double source_distance;  // d_i = r
    double angle;            // phi in [0, 2*pi)
    double dest_distance;    // c_i

    static RelayLocation from_polar(double r, double phi, const Disc& disc) noexcept;
};

/// Draws one PPP realization: Poisson count, then points i.i.d. uniform on
/// the disc (radius via inverse CDF r = R_D*sqrt(u)). Deterministic for a
/// fixed seed.
std::vector<RelayLocation> sample_ppp(const Disc& disc, const PppConfig& ppp,
                                      std::uint64_t seed);

/// Same draw fed from a caller-provided stream; used by the Monte Carlo
/// engine so each trial stays on its own counter-based stream. Appends into
/// `out` (cleared first).
void sample_ppp_into(const Disc& disc, const PppConfig& ppp, TrialRng& rng,
                     std::vector<RelayLocation>& out);

/// Draws exactly `count` i.i.d. uniform points on the disc.
void sample_uniform_relays_into(const Disc& disc, std::uint64_t count, TrialRng& rng,
                                std::vector<RelayLocation>& out);

/// Density of the source-to-nearest-relay distance conditioned on at least
/// one relay being present: f(r) = 2*zeta*pi*lambda*r*exp(-pi*lambda*r^2)
/// with zeta = 1/(1 - exp(-pi*lambda*R_D^2)).
/// Throws std::domain_error for zero intensity (conditioning undefined).
double nearest_relay_distance_pdf(double r, const PppConfig& ppp, const Disc& disc);

}  // namespace relaysim

#endif
