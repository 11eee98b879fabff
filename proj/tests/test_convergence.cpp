#include "lqso/atomic_dynamics.hpp"
#include "lqso/convergence.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>

using namespace lqso;

namespace {

double limit_of(const ConvergenceReport& r)
{
    return std::get<double>(r.predicted_limit);
}

} // namespace

TEST_CASE("W1 to a Dirac for atomic measures")
{
    const AtomicMeasure m({0.2, 0.7}, {0.5, 0.5});
    CHECK(w1_to_dirac(m, 0.7) == doctest::Approx(0.25));
    CHECK(w1_to_dirac(m, 0.0) == doctest::Approx(0.45));
    CHECK(w1_to_dirac(AtomicMeasure::dirac(0.3), 0.3) == 0.0);
    CHECK(tail_mass(m, 0.2) == 0.5);
    CHECK(tail_mass(AtomicMeasure::dirac(0.3), 0.3) == 0.0);
    CHECK_THROWS_AS(w1_to_dirac(m, 1.5), std::domain_error);
}

TEST_CASE("W1 to a Dirac for continuous measures")
{
    const DensityOrbit uniform(KernelParams(0.8), CdfMeasure::uniform(), 1);
    CHECK(w1_to_dirac(uniform, 1.0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(w1_to_dirac(uniform, 0.0) == doctest::Approx(0.5).epsilon(1e-12));
    const DensityOrbit pow2(KernelParams(0.8), CdfMeasure::power(2), 1);
    CHECK(w1_to_dirac(pow2, 1.0) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(w1_to_dirac(pow2, 0.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));

    // One step from uniform: the CDF is G(x), whose integral is 1/3 + q/3.
    const DensityOrbit step1(KernelParams(0.8), CdfMeasure::uniform(), 2);
    CHECK(w1_to_dirac(step1, 1.0) == doctest::Approx(1.0 / 3.0 + 0.2 / 3.0).epsilon(1e-12));
    CHECK(w1_to_dirac(step1, 0.0) == doctest::Approx(1.0 - 0.4).epsilon(1e-12));

    CHECK_THROWS_AS(w1_to_dirac(uniform, 0.5), std::invalid_argument);
}

TEST_CASE("continuous runs converge to the predicted endpoint")
{
    const InitialMeasure uniform = parse_measure("uniform");
    const auto r = run_to_convergence(KernelParams(0.8), uniform, 1e-3, 200);
    CHECK(limit_of(r) == 1.0);
    REQUIRE(r.converged_at);
    CHECK(*r.converged_at <= 60);
    CHECK(r.distances.front().first == 0);
    CHECK(r.distances.front().second == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(r.distances.back().second <= 1e-3);
    CHECK(r.distances.size() == *r.converged_at + 1);
    for (std::size_t i = 1; i < r.distances.size(); ++i)
        CHECK(r.distances[i].second < r.distances[i - 1].second);

    // Eventually W1 contracts by about 1/(2p) per step.
    const auto longer = run_to_convergence(KernelParams(0.8), uniform, 1e-8, 200);
    const auto& d = longer.distances;
    REQUIRE(d.size() > 10);
    CHECK(d.back().second / d[d.size() - 2].second == doctest::Approx(1.0 / 1.6).epsilon(1e-2));

    for (double p : {0.05, 0.2, 0.4}) {
        const auto low = run_to_convergence(KernelParams(p), parse_measure("pow:2"), 1e-3, 200);
        CHECK(limit_of(low) == 0.0);
        CHECK(low.converged_at);
    }
}

TEST_CASE("atomic runs converge to the extreme atom")
{
    const InitialMeasure two = parse_measure("atoms 0.2:0.5,0.7:0.5");
    const auto r = run_to_convergence(KernelParams(0.3), two, 1e-9, 200);
    CHECK(limit_of(r) == 0.7);
    REQUIRE(r.converged_at);
    CHECK(*r.converged_at <= 60);

    const auto high = run_to_convergence(KernelParams(0.8), two, 1e-9, 200, Metric::tail_mass);
    CHECK(limit_of(high) == 0.2);
    REQUIRE(high.converged_at);
    CHECK(*high.converged_at <= 30);
    CHECK(high.metric == Metric::tail_mass);

    const auto capped = run_to_convergence(KernelParams(0.8), two, 1e-9, 5);
    CHECK_FALSE(capped.converged_at);
    CHECK(capped.distances.size() == 6);
}

TEST_CASE("two atoms: the smaller atom's weight approaches one")
{
    const AtomicMeasure m({0.3, 0.6}, {0.5, 0.5});
    const auto traj = iterate(KernelParams(0.8), m, 30);
    CHECK(1.0 - traj.last().weight_at(0.3) <= 1e-9);
}

TEST_CASE("p = 1/2 short-circuits")
{
    for (const char* d : {"uniform", "pow:3", "atoms 0.1:0.2,0.5:0.8"}) {
        const auto r = run_to_convergence(KernelParams(0.5), parse_measure(d), 1e-3, 200);
        CHECK(std::holds_alternative<IdentityLimit>(r.predicted_limit));
        REQUIRE(r.converged_at);
        CHECK(*r.converged_at == 0);
        REQUIRE(r.distances.size() == 1);
        CHECK(r.distances[0].second == 0.0);
        CHECK(r.initial == d);
    }
}

TEST_CASE("every preset converges within 200 steps")
{
    for (double p : {0.05, 0.2, 0.4, 0.6, 0.8, 0.95})
        for (const char* d : {"uniform", "pow:2", "pow:5", "atoms 0.1:0.3,0.4:0.3,0.9:0.4"}) {
            CAPTURE(p);
            CAPTURE(d);
            const auto r = run_to_convergence(KernelParams(p), parse_measure(d), 1e-3, 200);
            CHECK(r.converged_at);
        }
}

TEST_CASE("argument errors")
{
    CHECK_THROWS_AS(run_to_convergence(KernelParams(0.8), parse_measure("uniform"), 0.0, 10),
                    std::invalid_argument);
    CHECK_THROWS_AS(run_to_convergence(KernelParams(0.8), parse_measure("uniform"), 1e-3, 10, Metric::tail_mass),
                    std::invalid_argument);
    CHECK(to_string(Metric::w1) == "W1");
    CHECK(to_string(Metric::tail_mass) == "tail-mass");
}

TEST_CASE("Dirac measures are fixed points")
{
    for (double p : {0.0, 0.3, 0.5, 0.8, 1.0})
        for (double a : {0.0, 0.25, 0.99})
            CHECK(fixed_point_check(KernelParams(p), a) == 0.0);
}
