#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "relaysim/quadrature.hpp"

using namespace relaysim;

TEST_CASE("empty interval") {
    const auto r = integrate([](double) { return 1.0; }, 2.0, 2.0, 1e-10);
    CHECK(r.value == 0.0);
    CHECK(r.converged);
}

TEST_CASE("polynomials are integrated to machine accuracy") {
    const auto r = integrate([](double x) { return 3.0 * x * x; }, 0.0, 2.0, 1e-12);
    CHECK(r.value == doctest::Approx(8.0).epsilon(1e-14));
    CHECK(r.error_bound < 1e-10);
}

TEST_CASE("smooth transcendental integrand") {
    const auto r = integrate([](double x) { return std::exp(-x) * std::cos(x); }, 0.0,
                             10.0, 1e-12);
    // antiderivative: e^{-x}(sin x - cos x)/2
    const double truth =
        0.5 * (std::exp(-10.0) * (std::sin(10.0) - std::cos(10.0)) + 1.0);
    CHECK(r.value == doctest::Approx(truth).epsilon(1e-13));
    CHECK(std::abs(r.value - truth) <= r.error_bound + 1e-15);
}

TEST_CASE("sharply peaked integrand needs and gets subdivision") {
    // integral of a narrow Gaussian over [0,1] ~ sigma sqrt(2 pi)
    const double sigma = 0.01;
    const auto r = integrate(
        [&](double x) {
            const double z = (x - 0.37) / sigma;
            return std::exp(-0.5 * z * z);
        },
        0.0, 1.0, 1e-12);
    CHECK(r.value == doctest::Approx(sigma * std::sqrt(2.0 * std::numbers::pi))
                         .epsilon(1e-9));
    CHECK(r.converged);
}

TEST_CASE("integrable endpoint log singularity") {
    const auto r = integrate([](double x) { return std::log(x); }, 0.0, 1.0, 1e-9, 60);
    CHECK(r.value == doctest::Approx(-1.0).epsilon(1e-7));
}

TEST_CASE("depth exhaustion is reported, value still returned") {
    const auto r = integrate([](double x) { return std::log(x); }, 0.0, 1.0, 1e-14, 4);
    CHECK_FALSE(r.converged);
    CHECK(r.value < 0.0);
}
