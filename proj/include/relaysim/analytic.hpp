#ifndef RELAYSIM_ANALYTIC_HPP
#define RELAYSIM_ANALYTIC_HPP

#include <cstdint>
#include <stdexcept>

#include "relaysim/channel.hpp"
#include "relaysim/geometry.hpp"

namespace relaysim {

/// Which closed-form / asymptotic expression produced a value.
enum class ExpressionTag {
    ExactRandomRelay,        // exact outage, randomly chosen relay
    HighSnrRandomRelay,      // high-SNR approximation of the same
    ClosestRelayAsymptotic,  // nearest-relay selection, high-SNR asymptotic
    BeamformingUpperBound,   // distributed beamforming, fixed relay count
};

struct AnalyticResult {
    double value = 0.0;
    double error_bound = 0.0;  // absolute quadrature error estimate
    ExpressionTag tag = ExpressionTag::ExactRandomRelay;
    bool in_validity_domain = true;
};

/// Thrown when an adaptive quadrature fails to reach its tolerance; carries
/// the partial value it got to.
class QuadratureError : public std::runtime_error {
  public:
    QuadratureError(const char* what, double partial)
        : std::runtime_error(what), partial_value(partial) {}
    double partial_value;
};

// --- special functions -----------------------------------------------------

/// Modified Bessel function of the second kind, order one. x > 0.
double bessel_k1(double x);

/// Two-term small-argument series for x*K1(x): 1 + (x^2/2)(ln(x/2) + c0).
/// Used inside the exact outage integrand near q -> 0, where forming
/// 1 - 2q K1(2q) directly would cancel catastrophically.
double small_argument_xk1(double x);

/// Digamma at a (small) positive integer: psi(1) = -gamma_E, and
/// psi(n+1) = psi(n) + 1/n.
double digamma(int n);

/// Lower incomplete gamma with shape 2: gamma(2, x) = 1 - (1 + x) e^{-x}.
double lower_incomplete_gamma(int shape, double x);

// --- outage expressions ----------------------------------------------------

/// Exact outage probability with a randomly chosen relay (any alpha >= 2).
/// Three terms: no-relay direct failure, decode-success-but-combined-outage
/// (triple integral over the fading floor and the relay position), and the
/// double-failure term. With `given_relay_present`, the no-relay term is
/// dropped and the rest is renormalized by P(N >= 1).
AnalyticResult exact_outage_random(const ScenarioParams& params, const Disc& disc,
                                   const PppConfig& ppp, bool given_relay_present = false);

/// High-SNR closed form of the same outage (alpha = 2 only); flagged as
/// outside its validity domain unless d > 5 R_D.
AnalyticResult approx_outage_random(const ScenarioParams& params, const Disc& disc,
                                    const PppConfig& ppp, bool given_relay_present = false);

/// High-SNR asymptotic outage for nearest-relay selection, conditioned on
/// N >= 1 (alpha = 2, intensity > 0).
AnalyticResult asymptotic_outage_closest(const ScenarioParams& params, const Disc& disc,
                                         const PppConfig& ppp);

/// High-SNR upper bound on the beamforming outage with exactly
/// `relay_count` relays (alpha = 2): a binomial sum over qualified-set
/// sizes of the per-size leading term.
AnalyticResult beamforming_outage_upper_bound(const ScenarioParams& params,
                                              const Disc& disc, std::uint64_t relay_count);

/// Spatially averaged probability that a uniformly placed relay fails to
/// decode, P(x_i < eps), exact for alpha = 2.
double prob_single_decode_failure(const ScenarioParams& params, const Disc& disc);

/// First-order form of the same: eps * (1 + R_D^2 / 2).
double prob_single_decode_failure_approx(const ScenarioParams& params, const Disc& disc);

/// The scenario constants the high-SNR expressions are built from.
struct AsymptoticConstants {
    double c0;     // -(psi(1) + psi(2)) / 2
    double e1;     // -(psi(1) + psi(2)) / 4
    double a1;     // 1 - (1 + d^2) eps
    double zeta;   // 1 / (1 - e^{-pi lambda R_D^2})
    double beta1;  // R_D^2 (R_D^2 + 2)
    double beta2;  // (1 + R_D^2)^2 ln(1 + R_D^2) + 4 e1 beta1
    double b3;     // 2 int_1^{1+R_D^2} y ln((1+d^2) y / eta) e^{-pi lambda y} dy
    double b4;     // (gamma(2, pi lambda (1+R_D^2)) - gamma(2, pi lambda)) / (pi^2 lambda^2)

    static AsymptoticConstants compute(const ScenarioParams& params, const Disc& disc,
                                       const PppConfig& ppp);
};

}  // namespace relaysim

#endif
