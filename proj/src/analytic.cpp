#include "relaysim/analytic.hpp"

#include <cmath>
#include <numbers>

#include "relaysim/quadrature.hpp"

namespace relaysim {
namespace {

constexpr double kPi = std::numbers::pi;

double require_alpha_two(const ScenarioParams& params) {
    if (params.path_loss_exponent != 2.0)
        throw std::invalid_argument("expression is derived for path-loss exponent 2");
    return params.decode_threshold();
}

double c0_constant() { return -0.5 * (digamma(1) + digamma(2)); }

/// 1 - x K1(x), switching to the series below x = 1e-3 where the direct
/// form loses all significant digits.
double one_minus_xk1(double x) {
    if (x < 1e-3) return -(x * x / 2.0) * (std::log(x / 2.0) + c0_constant());
    return 1.0 - x * bessel_k1(x);
}

}  // namespace

double bessel_k1(double x) {
    if (!(x > 0.0)) throw std::domain_error("bessel_k1: x must be > 0");
    return std::cyl_bessel_k(1.0, x);
}

double small_argument_xk1(double x) {
    return 1.0 + (x * x / 2.0) * (std::log(x / 2.0) + c0_constant());
}

double digamma(int n) {
    if (n < 1) throw std::domain_error("digamma: argument must be a positive integer");
    double value = -std::numbers::egamma;
    for (int k = 1; k < n; ++k) value += 1.0 / k;
    return value;
}

double lower_incomplete_gamma(int shape, double x) {
    if (shape != 2) throw std::domain_error("lower_incomplete_gamma: only shape 2 is implemented");
    if (x < 0.0) throw std::domain_error("lower_incomplete_gamma: x must be >= 0");
    // gamma(2, x) = 1 - (1 + x) e^{-x}
    return -std::expm1(-x) - x * std::exp(-x);
}

AnalyticResult exact_outage_random(const ScenarioParams& params, const Disc& disc,
                                   const PppConfig& ppp, bool given_relay_present) {
    const double eps = params.decode_threshold();
    const double alpha = params.path_loss_exponent;
    const double d = disc.dest_distance;
    const double rd = disc.radius;
    const double eta = params.harvesting_efficiency;
    const double big_a = 1.0 + std::pow(d, alpha);
    const double mu = ppp.mean_measure(disc);
    const double p_some_relay = -std::expm1(-mu);

    AnalyticResult out;
    out.tag = ExpressionTag::ExactRandomRelay;
    if (given_relay_present && !(p_some_relay > 0.0))
        throw std::invalid_argument("exact_outage_random: cannot condition on N >= 1 "
                                    "with zero intensity");
    if (eps == 0.0) return out;

    const bool alpha_is_two = alpha == 2.0;
    auto one_plus_pow = [&](double base_sq) {
        return alpha_is_two ? 1.0 + base_sq : 1.0 + std::pow(base_sq, 0.5 * alpha);
    };

    // Decode-success-but-outage term: for a relay at (r, theta) and a direct
    // floor x0, the second-hop shortfall probability is 1 - 2q K1(2q).
    auto theta_integral = [&](double r, double x0) {
        const double sr = one_plus_pow(r * r);
        const double scale = sr * (eps - x0) / eta;
        auto f = [&](double theta) {
            const double c2 = r * r + d * d - 2.0 * r * d * std::cos(theta);
            const double q2 = one_plus_pow(c2) * scale;
            return one_minus_xk1(2.0 * std::sqrt(q2));
        };
        // Integrand is symmetric about theta = pi.
        return 2.0 * integrate(f, 0.0, kPi, 1e-8).value;
    };
    auto radial_integral = [&](double x0) {
        auto f = [&](double r) {
            return std::exp(-one_plus_pow(r * r) * eps) * r * theta_integral(r, x0);
        };
        return integrate(f, 0.0, rd, 1e-8).value;
    };
    auto outer_integrand = [&](double x0) {
        return radial_integral(x0) * big_a * std::exp(-big_a * x0);
    };
    const QuadratureResult outer = integrate(outer_integrand, 0.0, eps, 5e-7);
    if (!outer.converged)
        throw QuadratureError("exact_outage_random: outer quadrature did not converge",
                              outer.value);

    // Both-links-fail term.
    auto fail_f = [&](double r) {
        return -std::expm1(-one_plus_pow(r * r) * eps) * r;
    };
    const QuadratureResult fail = integrate(fail_f, 0.0, rd, 1e-8);

    const double direct_outage = -std::expm1(-big_a * eps);
    const double q1 = outer.value / (kPi * rd * rd);
    const double both_fail = 2.0 / (rd * rd) * direct_outage * fail.value;

    if (given_relay_present) {
        out.value = q1 + both_fail;
        out.error_bound = outer.error_bound / (kPi * rd * rd) +
                          2.0 / (rd * rd) * direct_outage * fail.error_bound;
    } else {
        out.value = direct_outage * std::exp(-mu) + p_some_relay * (q1 + both_fail);
        out.error_bound = p_some_relay * (outer.error_bound / (kPi * rd * rd) +
                                          2.0 / (rd * rd) * fail.error_bound);
    }
    return out;
}

AnalyticResult approx_outage_random(const ScenarioParams& params, const Disc& disc,
                                    const PppConfig& ppp, bool given_relay_present) {
    const double eps = require_alpha_two(params);
    const double d = disc.dest_distance;
    const double rd2 = disc.radius * disc.radius;
    const double eta = params.harvesting_efficiency;
    const double big_a = 1.0 + d * d;
    const double mu = ppp.mean_measure(disc);

    const double c0 = c0_constant();
    const double e1 = 0.5 * c0;
    const double a1 = 1.0 - big_a * eps;
    const double beta1 = rd2 * (rd2 + 2.0);
    const double beta2 = (1.0 + rd2) * (1.0 + rd2) * std::log(1.0 + rd2) + 4.0 * e1 * beta1;
    const double ksq = big_a * big_a * eps * eps / (eta * eta);
    const double log_psi = std::log(big_a * eps / eta);

    const double decode_but_outage =
        -(eta * a1 / (4.0 * rd2)) * (beta1 * (ksq * log_psi - ksq) + ksq * beta2);
    const double both_fail = 0.5 * (rd2 + 2.0) * big_a * eps * eps;

    AnalyticResult out;
    out.tag = ExpressionTag::HighSnrRandomRelay;
    out.in_validity_domain = d > 5.0 * disc.radius;
    if (given_relay_present) {
        out.value = decode_but_outage + both_fail;
    } else {
        out.value = big_a * eps * std::exp(-mu) +
                    (decode_but_outage + both_fail) * -std::expm1(-mu);
    }
    return out;
}

AnalyticResult asymptotic_outage_closest(const ScenarioParams& params, const Disc& disc,
                                         const PppConfig& ppp) {
    const double eps = require_alpha_two(params);
    if (!(ppp.intensity > 0.0))
        throw std::invalid_argument("asymptotic_outage_closest: intensity must be > 0");
    const double d = disc.dest_distance;
    const double rd2 = disc.radius * disc.radius;
    const double eta = params.harvesting_efficiency;
    const double big_a = 1.0 + d * d;
    const double pl = kPi * ppp.intensity;
    const double c0 = c0_constant();

    const AsymptoticConstants k = AsymptoticConstants::compute(params, disc, ppp);

    auto b3_f = [&](double y) { return y * std::log(big_a * y / eta) * std::exp(-pl * y); };
    const QuadratureResult b3q = integrate(b3_f, 1.0, 1.0 + rd2, 1e-12);
    if (!b3q.converged)
        throw QuadratureError("asymptotic_outage_closest: b3 quadrature did not converge",
                              2.0 * b3q.value);
    const double b3 = 2.0 * b3q.value;

    const double front = pl * k.zeta * big_a * big_a * eps * eps * std::exp(pl) / (4.0 * eta);
    const double decode_but_outage =
        -front * (b3 + 2.0 * k.b4 * std::log(eps) - k.b4 * (1.0 - 4.0 * c0));
    const double both_fail =
        k.zeta * big_a * eps * eps *
        (1.0 - (1.0 + rd2) * std::exp(-pl * rd2) - std::expm1(-pl * rd2) / pl);

    AnalyticResult out;
    out.tag = ExpressionTag::ClosestRelayAsymptotic;
    out.value = decode_but_outage + both_fail;
    out.error_bound = front * 2.0 * b3q.error_bound;
    out.in_validity_domain = d > 5.0 * disc.radius && big_a * eps / eta < 1.0;
    return out;
}

AnalyticResult beamforming_outage_upper_bound(const ScenarioParams& params,
                                              const Disc& disc, std::uint64_t relay_count) {
    const double eps = require_alpha_two(params);
    if (relay_count < 1)
        throw std::invalid_argument("beamforming_outage_upper_bound: relay_count must be >= 1");
    const double d = disc.dest_distance;
    const double rd2 = disc.radius * disc.radius;
    const double eta = params.harvesting_efficiency;
    const double big_a = 1.0 + d * d;

    const double a1 = 1.0 - big_a * eps;
    const double beta1 = rd2 * (rd2 + 2.0);
    const double psi = big_a * eps / eta;
    const double log_inv_psi = std::log(1.0 / psi);
    const double p_decode_fail = eps * (1.0 + rd2 / 2.0);

    AnalyticResult out;
    out.tag = ExpressionTag::BeamformingUpperBound;
    out.in_validity_domain = psi < 1.0 && a1 > 0.0;

    double sum = 0.0;
    double binom = 1.0;  // C(N, n), updated incrementally
    for (std::uint64_t n = 0; n <= relay_count; ++n) {
        if (n > 0) binom *= static_cast<double>(relay_count - n + 1) / static_cast<double>(n);
        const double per_size = a1 * eta * std::pow(beta1 / (2.0 * rd2), static_cast<double>(n)) *
                                std::pow(psi, static_cast<double>(n + 1)) *
                                std::pow(log_inv_psi, static_cast<double>(n)) /
                                static_cast<double>(n + 1);
        sum += binom * per_size *
               std::pow(p_decode_fail, static_cast<double>(relay_count - n));
    }
    out.value = sum > 0.0 ? sum : 0.0;
    return out;
}

double prob_single_decode_failure(const ScenarioParams& params, const Disc& disc) {
    const double eps = require_alpha_two(params);
    if (eps == 0.0) return 0.0;
    const double u = eps * disc.radius * disc.radius;
    // 1 - e^{-eps} (1 - e^{-eps R^2}) / (eps R^2), written to stay accurate
    // as eps -> 0.
    return 1.0 - std::exp(-eps) * (-std::expm1(-u) / u);
}

double prob_single_decode_failure_approx(const ScenarioParams& params, const Disc& disc) {
    const double eps = require_alpha_two(params);
    return eps * (1.0 + disc.radius * disc.radius / 2.0);
}

AsymptoticConstants AsymptoticConstants::compute(const ScenarioParams& params,
                                                 const Disc& disc, const PppConfig& ppp) {
    const double eps = params.decode_threshold();
    const double d = disc.dest_distance;
    const double rd2 = disc.radius * disc.radius;
    const double eta = params.harvesting_efficiency;
    const double big_a = 1.0 + d * d;
    const double pl = kPi * ppp.intensity;

    AsymptoticConstants k{};
    k.c0 = c0_constant();
    k.e1 = 0.5 * k.c0;
    k.a1 = 1.0 - big_a * eps;
    k.zeta = pl > 0.0 ? 1.0 / -std::expm1(-pl * rd2) : 0.0;
    k.beta1 = rd2 * (rd2 + 2.0);
    k.beta2 = (1.0 + rd2) * (1.0 + rd2) * std::log(1.0 + rd2) + 4.0 * k.e1 * k.beta1;
    if (pl > 0.0) {
        auto b3_f = [&](double y) {
            return y * std::log(big_a * y / eta) * std::exp(-pl * y);
        };
        k.b3 = 2.0 * integrate(b3_f, 1.0, 1.0 + rd2, 1e-12).value;
        k.b4 = (lower_incomplete_gamma(2, pl * (1.0 + rd2)) - lower_incomplete_gamma(2, pl)) /
               (pl * pl);
    } else {
        k.b3 = 0.0;
        k.b4 = 0.0;
    }
    return k;
}

}  // namespace relaysim
