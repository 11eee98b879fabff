#include "lqso/cdf_dynamics.hpp"
#include "lqso/rng.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <stdexcept>

using namespace lqso;

namespace {
const KernelParams k08(0.8);
const CdfMeasure lebesgue = CdfMeasure::uniform();
} // namespace

TEST_CASE("cdf map and density factor examples")
{
    CHECK(cdf_map(k08, 0.5) == doctest::Approx(0.35).epsilon(1e-15));
    for (double p : {0.0, 0.3, 0.5, 0.8, 1.0}) {
        CHECK(cdf_map(KernelParams(p), 0.0) == 0.0);
        CHECK(cdf_map(KernelParams(p), 1.0) == 1.0);
    }
    for (double x : {0.1, 0.37, 0.9})
        CHECK(cdf_map(KernelParams(0.5), x) == doctest::Approx(x).epsilon(1e-15));

    CHECK(density_factor(k08, 0.0) == doctest::Approx(0.4).epsilon(1e-15));
    CHECK(density_factor(k08, 1.0) == 1.6);
    CHECK(density_factor(k08, 0.5) == doctest::Approx(1.0).epsilon(1e-15));

    CHECK_THROWS_AS(cdf_map(k08, 1.5), std::domain_error);
    CHECK_THROWS_AS(density_factor(k08, -0.1), std::domain_error);
}

TEST_CASE("cdf map is increasing and its derivative is the density factor")
{
    for (double p : {0.0, 0.1, 0.45, 0.5, 0.7, 1.0}) {
        const KernelParams k(p);
        double prev = -1.0;
        for (int i = 0; i <= 1000; ++i) {
            const double x = i / 1000.0;
            const double g = cdf_map(k, x);
            CHECK(g >= prev);
            prev = g;
            if (i > 0 && i < 1000) {
                const double h = 1e-6;
                const double fd = (cdf_map(k, x + h) - cdf_map(k, x - h)) / (2 * h);
                CHECK(std::abs(fd - density_factor(k, x)) <= 1e-6);
            }
        }
    }
}

TEST_CASE("reflection conjugacy of the cdf map")
{
    for (int j = 0; j <= 10; ++j) {
        const KernelParams k(j / 10.0);
        for (int i = 0; i <= 10000; ++i) {
            const double x = i / 10000.0;
            CHECK(std::abs(cdf_map(k, x) - (1.0 - cdf_map(k.swapped(), 1.0 - x))) <= 1e-15);
            CHECK(std::abs(survival_map(k, 1.0 - x) - (1.0 - cdf_map(k, x))) <= 1e-15);
        }
    }
}

TEST_CASE("cdf_at and density_at examples")
{
    const DensityOrbit n2(k08, lebesgue, 2);
    const DensityOrbit n3(k08, lebesgue, 3);
    CHECK(cdf_at(n2, 0.5) == doctest::Approx(0.35).epsilon(1e-15));
    CHECK(cdf_at(n3, 0.5) == doctest::Approx(0.2135).epsilon(1e-14));
    CHECK(cdf_at(n3, 1.0) == 1.0);
    CHECK(cdf_at(DensityOrbit(k08, CdfMeasure::power(2), 7), 1.0) == 1.0);

    CHECK(density_at(n2, 0.5).value == doctest::Approx(0.82).epsilon(1e-15));
    CHECK(density_at(n3, 0.0).value == doctest::Approx(0.064).epsilon(1e-15));
    CHECK(density_at(n3, 1.0).value == doctest::Approx(4.096).epsilon(1e-15));
    CHECK(density_at(n3, 1.0).log == doctest::Approx(std::log(4.096)).epsilon(1e-15));

    CHECK_THROWS_AS(DensityOrbit(k08, lebesgue, 0), std::invalid_argument);
}

TEST_CASE("orbit index conventions")
{
    const DensityOrbit o(k08, CdfMeasure::power(2), 1);
    for (double x : {0.0, 0.3, 0.8, 1.0}) {
        CHECK(cdf_at(o, x) == CdfMeasure::power(2).cdf(x));
        CHECK(measure_cdf_at(o, x) == cdf_at(o.at_step(2), x));
        CHECK(survival_at(o.at_step(5), x) ==
              doctest::Approx(1.0 - cdf_at(o.at_step(5), x)).epsilon(1e-14));
    }
}

TEST_CASE("density matches a direct long double product")
{
    SplitMix64 rng(3);
    for (int t = 0; t < 300; ++t) {
        const double p = rng.uniform();
        const std::size_t n = 1 + rng.below(60);
        const double x = rng.uniform();
        long double g = x, prod = 1.0L;
        for (std::size_t i = 0; i < n; ++i) {
            prod *= 2.0L * p * g + 2.0L * (1.0L - p) * (1.0L - g);
            g = oracle::cdf_step_ld(p, g);
        }
        const DensityValue d = density_at(DensityOrbit(KernelParams(p), lebesgue, n), x);
        CHECK(d.value == doctest::Approx(double(prod)).epsilon(1e-11));
        if (prod > 0)
            CHECK(d.log == doctest::Approx(double(std::log(prod))).epsilon(1e-11));
    }
}

TEST_CASE("endpoint densities are exact powers")
{
    for (double p : {0.6, 0.8, 0.95, 0.3}) {
        const KernelParams k(p);
        for (std::size_t n = 1; n <= 40; ++n) {
            const DensityOrbit o(k, lebesgue, n);
            const double tol = double(n) * std::ldexp(1.0, -50);
            const double at0 = std::pow(2 * k.q(), double(n));
            const double at1 = std::pow(2 * k.p(), double(n));
            CHECK(std::abs(density_at(o, 0.0).value - at0) <= tol * at0);
            CHECK(std::abs(density_at(o, 1.0).value - at1) <= tol * at1);
        }
    }
}

TEST_CASE("density does not overflow for long orbits")
{
    const DensityValue d = density_at(DensityOrbit(KernelParams(0.9), lebesgue, 5000), 1.0);
    CHECK(std::isinf(d.value));
    CHECK(d.log == doctest::Approx(5000 * std::log(1.8)).epsilon(1e-12));
}

TEST_CASE("zero factor gives log density -inf")
{
    const DensityValue d = density_at(DensityOrbit(KernelParams(1.0), lebesgue, 3), 0.0);
    CHECK(d.value == 0.0);
    CHECK(d.log == -std::numeric_limits<double>::infinity());
}

TEST_CASE("endpoint divergence dichotomy")
{
    for (double p : {0.6, 0.9, 0.4, 0.1}) {
        const KernelParams k(p);
        double prev0 = 1.0, prev1 = 1.0;
        for (std::size_t n = 1; n <= 30; ++n) {
            const DensityOrbit o(k, lebesgue, n);
            const double d0 = density_at(o, 0.0).value, d1 = density_at(o, 1.0).value;
            if (p > 0.5) {
                CHECK(d0 < prev0);
                CHECK(d1 > prev1);
            } else {
                CHECK(d0 > prev0);
                CHECK(d1 < prev1);
            }
            prev0 = d0;
            prev1 = d1;
        }
    }
}

TEST_CASE("cdf orbit semigroup and monotonicity")
{
    SplitMix64 rng(11);
    for (int t = 0; t < 100; ++t) {
        const KernelParams k(rng.uniform());
        const std::size_t n = 1 + rng.below(20), m = rng.below(20);
        const double x = rng.uniform();
        const DensityOrbit o(k, CdfMeasure::power(1.5), n);
        double v = cdf_at(o, x);
        for (std::size_t i = 0; i < m; ++i)
            v = cdf_map(k, v);
        CHECK(std::abs(v - cdf_at(o.at_step(n + m), x)) <= 1e-14);
    }
    for (double p : {0.1, 0.5, 0.9})
        for (std::size_t n : {1, 4, 30}) {
            const DensityOrbit o(KernelParams(p), CdfMeasure::power(2), n);
            double prev = 0.0;
            for (int i = 0; i <= 2000; ++i) {
                // G is increasing, but its rounded value can dip by an ulp.
                const double g = cdf_at(o, i / 2000.0);
                CHECK(g >= prev - 4e-16);
                prev = g;
            }
        }
}

TEST_CASE("pushforward of an interval")
{
    CHECK(pushforward_interval(k08, lebesgue, 0.2, 0.6) == doctest::Approx(0.352).epsilon(1e-14));
    CHECK(pushforward_interval(k08, CdfMeasure::power(2), 0.2, 0.6) ==
          doctest::Approx(0.2048).epsilon(1e-14));
    CHECK(pushforward_interval(KernelParams(0.3), CdfMeasure::power(3), 0.0, 1.0) == 1.0);
    CHECK(pushforward_interval(k08, lebesgue, 0.4, 0.4) == 0.0);
    CHECK_THROWS_AS(pushforward_interval(k08, lebesgue, 0.6, 0.2), std::invalid_argument);

    SplitMix64 rng(21);
    for (int t = 0; t < 500; ++t) {
        const KernelParams k(rng.uniform());
        double a = rng.uniform(), b = rng.uniform();
        if (a > b)
            std::swap(a, b);
        const CdfMeasure m = CdfMeasure::power(1.0 + 3 * rng.uniform());
        const DensityOrbit o(k, m, 2);
        CHECK(pushforward_interval(k, m, a, b) ==
              doctest::Approx(cdf_at(o, b) - cdf_at(o, a)).epsilon(1e-12));
    }
}

TEST_CASE("integrate_density examples")
{
    const auto whole = integrate_density(DensityOrbit(k08, lebesgue, 5), 0.0, 1.0, 1e-10);
    CHECK(whole.converged);
    CHECK(std::abs(whole.value - 1.0) <= 1e-10);

    // f^(1) integrates to the one-step pushforward, f^(2) to the two-step one.
    const auto one = integrate_density(DensityOrbit(k08, lebesgue, 1), 0.2, 0.6, 1e-12);
    CHECK(one.value == doctest::Approx(0.352).epsilon(1e-11));
    const auto two = integrate_density(DensityOrbit(k08, lebesgue, 2), 0.2, 0.6, 1e-12);
    CHECK(two.value == doctest::Approx(0.259072).epsilon(1e-11));

    const auto empty = integrate_density(DensityOrbit(k08, lebesgue, 4), 0.3, 0.3, 1e-10);
    CHECK(empty.value == 0.0);

    CHECK_THROWS_AS(integrate_density(DensityOrbit(k08, CdfMeasure::from_grid({0, 1}, {0, 1}), 2), 0, 1, 1e-8),
                    std::invalid_argument);
    CHECK_THROWS_AS(integrate_density(DensityOrbit(k08, lebesgue, 2), 0.6, 0.2, 1e-8), std::invalid_argument);
}

TEST_CASE("integrated density equals the CDF difference of the iterated measure")
{
    SplitMix64 rng(314);
    for (int t = 0; t < 60; ++t) {
        const KernelParams k(0.02 + 0.96 * rng.uniform());
        const std::size_t n = 1 + rng.below(15);
        double a = rng.uniform(), b = rng.uniform();
        if (a > b)
            std::swap(a, b);
        const CdfMeasure m = t % 2 ? CdfMeasure::power(2) : lebesgue;
        const DensityOrbit o(k, m, n);
        const auto r = integrate_density(o, a, b, 1e-10);
        CHECK(r.converged);
        CHECK(std::abs(r.value - (measure_cdf_at(o, b) - measure_cdf_at(o, a))) <= 1e-6);

        // Independent route: Simpson on the raw product in long double.
        const long double p = k.p();
        const auto integrand = [&](long double x) {
            long double g = t % 2 ? x * x : x, prod = 1.0L;
            for (std::size_t i = 0; i < n; ++i) {
                prod *= 2.0L * p * g + 2.0L * (1.0L - p) * (1.0L - g);
                g = oracle::cdf_step_ld(p, g);
            }
            return prod * (t % 2 ? 2.0L * x : 1.0L);
        };
        CHECK(std::abs(r.value - double(oracle::simpson(integrand, a, b, 20000))) <= 1e-6);
    }
}

TEST_CASE("normalization for long orbits")
{
    for (std::size_t n : {10, 20})
        for (double p : {0.2, 0.8, 0.95}) {
            const auto r = integrate_density(DensityOrbit(KernelParams(p), lebesgue, n), 0.0, 1.0, 1e-9);
            CHECK(r.converged);
            CHECK(std::abs(r.value - 1.0) <= 1e-6);
        }
}

TEST_CASE("cdf measure presets")
{
    const CdfMeasure pow2 = CdfMeasure::power(2);
    CHECK(pow2.name() == "pow:2");
    CHECK(CdfMeasure::power(2.5).name() == "pow:2.5");
    CHECK(lebesgue.name() == "uniform");
    CHECK(pow2.cdf(0.5) == 0.25);
    CHECK(pow2.density(0.5) == 1.0);
    CHECK(pow2.survival(0.5) == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(pow2.survival(1.0 - 1e-12) == doctest::Approx(2e-12).epsilon(1e-6));
    CHECK_THROWS_AS(CdfMeasure::power(0.5), std::invalid_argument);
    CHECK_THROWS_AS(pow2.cdf(1.1), std::domain_error);

    const CdfMeasure grid = CdfMeasure::from_grid({0.0, 0.5, 1.0}, {0.0, 0.2, 1.0});
    CHECK(grid.name() == "user-grid");
    CHECK(grid.cdf(0.5) == 0.2);
    CHECK(grid.cdf(0.25) == doctest::Approx(0.1));
    CHECK(grid.cdf(0.75) == doctest::Approx(0.6));
    CHECK_FALSE(grid.has_density());
    CHECK_THROWS_AS(grid.density(0.3), std::logic_error);
    CHECK_THROWS_AS(CdfMeasure::from_grid({0.0, 0.5, 0.9}, {0.0, 0.2, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(CdfMeasure::from_grid({0.0, 0.5, 1.0}, {0.0, 0.6, 0.5}), std::invalid_argument);
    CHECK_THROWS_AS(CdfMeasure::from_grid({0.0, 0.5, 1.0}, {0.1, 0.6, 1.0}), std::invalid_argument);
}
