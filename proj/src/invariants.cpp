#include "lqso/invariants.hpp"

#include "lqso/atomic_dynamics.hpp"
#include "lqso/bounds.hpp"
#include "lqso/cdf_dynamics.hpp"
#include "lqso/convergence.hpp"
#include "lqso/orbit_grid.hpp"
#include "lqso/particles.hpp"
#include "lqso/rng.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <functional>
#include <sstream>

namespace lqso {

namespace {

AtomicMeasure random_measure(SplitMix64& rng, std::size_t max_atoms)
{
    const std::size_t m = 1 + rng.below(max_atoms);
    std::vector<std::pair<double, double>> pairs;
    double total = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double w = 0.05 + rng.uniform();
        pairs.emplace_back(rng.uniform(), w);
        total += w;
    }
    for (auto& [a, w] : pairs)
        w /= total;
    // Renormalizing by a sum may still leave |sum - 1| at a few ulp.
    return AtomicMeasure::from_pairs(std::move(pairs));
}

class Suite {
public:
    void run(const std::string& module, const std::string& name, const std::function<std::string()>& body)
    {
        std::string failure;
        try {
            failure = body();
        } catch (const std::exception& e) {
            failure = std::string("exception: ") + e.what();
        }
        results_.push_back({module, name, failure.empty(), failure});
    }

    std::vector<InvariantResult> take() { return std::move(results_); }

private:
    std::vector<InvariantResult> results_;
};

std::string worse_than(const char* what, double value, double limit)
{
    if (value <= limit)
        return {};
    std::ostringstream msg;
    msg << what << " = " << value << " exceeds " << limit;
    return msg.str();
}

} // namespace

std::vector<InvariantResult> run_invariant_suite(Execution exec)
{
    Suite suite;
    const double ps[] = {0.0, 0.2, 0.35, 0.5, 0.65, 0.8, 1.0};

    suite.run("kernel", "normalized_symmetric_supported", [&] {
        SplitMix64 rng(1);
        for (int t = 0; t < 1000; ++t) {
            const KernelParams k(rng.uniform());
            const double x = rng.uniform(), y = rng.uniform();
            const AtomicMeasure a = kernel_measure(k, x, y);
            if (!(a == kernel_measure(k, y, x)))
                return std::string("kernel measure not symmetric");
            if (std::abs(a.total_mass() - 1.0) > 0.0)
                return std::string("kernel measure mass != 1");
            for (double atom : a.atoms())
                if (atom != x && atom != y)
                    return std::string("kernel support escapes {x, y}");
        }
        return std::string();
    });

    suite.run("atomic_dynamics", "mass_conservation", [&] {
        SplitMix64 rng(2);
        double worst = 0.0;
        for (int t = 0; t < 500; ++t) {
            const KernelParams k(rng.uniform());
            AtomicMeasure m = random_measure(rng, 12);
            for (int s = 0; s < 5; ++s) {
                m = apply_once(k, m);
                worst = std::max(worst, std::abs(m.total_mass() - 1.0));
            }
        }
        return worse_than("|sum w - 1|", worst, 1e-12);
    });

    suite.run("atomic_dynamics", "double_sum_oracle", [&] {
        SplitMix64 rng(3);
        double worst = 0.0;
        for (int t = 0; t < 50; ++t) {
            const KernelParams k(rng.uniform());
            const AtomicMeasure m = random_measure(rng, 20);
            const AtomicMeasure fast = apply_once(k, m);
            const auto slow = reference::apply_double_sum(k, m);
            for (std::size_t i = 0; i < m.size(); ++i)
                worst = std::max(worst, std::abs(fast.weight_at(m.atoms()[i]) - slow[i]));
        }
        return worse_than("max |prefix-sum - double-sum|", worst, 1e-12);
    });

    suite.run("atomic_dynamics", "identity_at_half_and_identity_kernel", [&] {
        SplitMix64 rng(4);
        double worst = 0.0;
        for (int t = 0; t < 100; ++t) {
            const AtomicMeasure m = random_measure(rng, 10);
            const AtomicTrajectory traj = iterate(KernelParams(0.5), m, 20);
            const auto via_identity = reference::apply_double_sum(IdentityKernel{}, m);
            for (std::size_t i = 0; i < m.size(); ++i) {
                worst = std::max(worst, std::abs(traj.last().weights()[i] - m.weights()[i]));
                worst = std::max(worst, std::abs(via_identity[i] - m.weights()[i]));
            }
        }
        return worse_than("max weight drift", worst, 1e-12);
    });

    suite.run("convergence", "dirac_fixed_points", [&] {
        for (double p : {0.0, 0.25, 0.5, 0.75, 1.0})
            for (int i = 0; i < 200; ++i)
                if (fixed_point_check(KernelParams(p), i / 200.0) != 0.0)
                    return std::string("Dirac measure moved");
        return std::string();
    });

    suite.run("cdf_dynamics", "reflection_conjugacy", [&] {
        double worst = 0.0;
        for (double p : ps) {
            const KernelParams k(p);
            for (int i = 0; i <= 2000; ++i) {
                const double x = i / 2000.0;
                worst = std::max(worst, std::abs(cdf_map(k, x) - (1.0 - cdf_map(k.swapped(), 1.0 - x))));
            }
        }
        return worse_than("reflection defect", worst, 1e-15);
    });

    suite.run("cdf_dynamics", "endpoint_densities", [&] {
        double worst = 0.0;
        for (double p : {0.6, 0.8, 0.95}) {
            const KernelParams k(p);
            for (std::size_t n = 1; n <= 40; ++n) {
                const DensityOrbit o(k, CdfMeasure::uniform(), n);
                const double at0 = std::pow(2.0 * k.q(), double(n));
                const double at1 = std::pow(2.0 * k.p(), double(n));
                const double e0 = std::abs(density_at(o, 0.0).value - at0) / at0;
                const double e1 = std::abs(density_at(o, 1.0).value - at1) / at1;
                worst = std::max(worst, std::max(e0, e1) / double(n));
            }
        }
        return worse_than("relative error / n", worst, std::ldexp(1.0, -50));
    });

    suite.run("cdf_dynamics", "derivative_identity", [&] {
        double worst = 0.0;
        for (double p : ps) {
            const KernelParams k(p);
            for (int i = 1; i < 100; ++i) {
                const double x = i / 100.0, h = 1e-6;
                const double fd = (cdf_map(k, x + h) - cdf_map(k, x - h)) / (2 * h);
                worst = std::max(worst, std::abs(fd - density_factor(k, x)));
            }
        }
        return worse_than("|centered difference - f|", worst, 1e-6);
    });

    suite.run("cdf_dynamics", "cdf_density_consistency", [&] {
        SplitMix64 rng(5);
        double worst = 0.0;
        for (int t = 0; t < 20; ++t) {
            const KernelParams k(0.05 + 0.9 * rng.uniform());
            const std::size_t n = 1 + rng.below(15);
            double a = rng.uniform(), b = rng.uniform();
            if (a > b)
                std::swap(a, b);
            const DensityOrbit o(k, t % 2 ? CdfMeasure::power(2.0) : CdfMeasure::uniform(), n);
            const double integral = integrate_density(o, a, b, 1e-9).value;
            worst = std::max(worst, std::abs(integral - (measure_cdf_at(o, b) - measure_cdf_at(o, a))));
        }
        return worse_than("|integral - CDF difference|", worst, 1e-6);
    });

    suite.run("cdf_dynamics", "monotone_cdfs", [&] {
        for (double p : ps)
            for (std::size_t n : {1, 5, 20}) {
                const DensityOrbit o(KernelParams(p), CdfMeasure::power(3.0), n);
                double prev = 0.0;
                for (int i = 0; i <= 1000; ++i) {
                    const double g = cdf_at(o, i / 1000.0);
                    if (g + 1e-15 < prev)
                        return std::string("CDF decreased");
                    prev = g;
                }
            }
        return std::string();
    });

    suite.run("bounds", "certificates_verified", [&] {
        const BoundsReport hi = verify_bounds(KernelParams(0.8), CdfMeasure::uniform(), 10, 1000, exec);
        const KernelParams low(0.3);
        const BoundsReport lo = verify_bounds(low, CdfMeasure::uniform(), min_valid_n(low), 1000, exec);
        for (const BoundsReport* r : {&hi, &lo}) {
            for (const auto& c : r->checks)
                if (c.max_violation > BoundsReport::tolerance)
                    return "check " + c.name + " violated by " + std::to_string(c.max_violation);
            if (r->diagnostic("image_endpoint").max_violation > 1e-12)
                return std::string("G(B_n) != beta_n B_n");
        }
        return std::string();
    });

    suite.run("convergence", "regular_limits", [&] {
        for (double p : {0.2, 0.8}) {
            const KernelParams k(p);
            const auto cont = run_to_convergence(k, parse_measure("uniform"), 1e-3, 200);
            const auto atom = run_to_convergence(k, parse_measure("atoms 0.1:0.3,0.5:0.4,0.9:0.3"), 1e-3, 200);
            if (!cont.converged_at || !atom.converged_at)
                return std::string("run did not converge");
            if (std::get<double>(cont.predicted_limit) != (p > 0.5 ? 1.0 : 0.0))
                return std::string("continuous limit on the wrong side");
            if (std::get<double>(atom.predicted_limit) != (p > 0.5 ? 0.1 : 0.9))
                return std::string("atomic limit on the wrong atom");
        }
        return std::string();
    });

    suite.run("particle_oracle", "one_step_kolmogorov", [&] {
        const KernelParams k(0.8);
        const auto e0 = sample_initial(parse_measure("uniform"), 100000, 7);
        const auto e1 = step_generation(continuous_particle_kernel(k), e0, exec);
        const DensityOrbit o(k, CdfMeasure::uniform(), 1);
        const double d = kolmogorov_distance(e1, [&](double x) { return measure_cdf_at(o, x); });
        return worse_than("Kolmogorov distance", d, 0.01);
    });

    suite.run("particle_oracle", "atomic_agreement", [&] {
        const KernelParams k(0.3);
        const auto init = parse_measure("atoms 0.2:0.3,0.5:0.3,0.8:0.4");
        auto e = sample_initial(init, 100000, 11);
        for (int s = 0; s < 3; ++s)
            e = step_generation(k, e, exec);
        const AtomicMeasure exact = iterate(k, init.atomic(), 3).last();
        const auto emp = empirical_weights(e, exact.atoms());
        double worst = 0.0;
        for (std::size_t i = 0; i < emp.size(); ++i)
            worst = std::max(worst, std::abs(emp[i] - exact.weights()[i]));
        return worse_than("per-atom deviation", worst, 4.0 / std::sqrt(100000.0));
    });

    suite.run("parallel", "kernels_match_serial_reference", [&] {
        const DensityOrbit o(KernelParams(0.7), CdfMeasure::power(2.0), 12);
        const auto xs = linspace(0.0, 1.0, 2001);
        const OrbitGrid par = evaluate_orbit_grid(o, xs, Execution::parallel);
        const OrbitGrid ser = reference::evaluate_orbit_grid(o, xs);
        if (par.g != ser.g || par.f != ser.f || par.log_f != ser.log_f)
            return std::string("orbit grid differs between serial and parallel paths");
        const auto e0 = sample_initial(parse_measure("pow:2"), 20000, 9);
        const KernelParams k(0.6);
        if (step_generation(k, e0, Execution::parallel).points != reference::step_generation(k, e0).points)
            return std::string("particle generation differs between serial and parallel paths");
        return std::string();
    });

    return suite.take();
}

} // namespace lqso
