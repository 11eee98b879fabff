#include "lqso/convergence.hpp"

#include "lqso/atomic_dynamics.hpp"

#include <cmath>
#include <stdexcept>

namespace lqso {

std::string to_string(Metric m)
{
    return m == Metric::w1 ? "W1" : "tail-mass";
}

double w1_to_dirac(const DensityOrbit& orbit, double target, double quad_tol)
{
    if (target != 0.0 && target != 1.0)
        throw std::invalid_argument("W1 target for a continuous measure must be 0 or 1");
    // The CDF approaches a unit step; seed the panels at its quantiles so the
    // step is never narrower than a panel.
    const std::vector<double> breaks = quantile_breakpoints([&](double x) { return cdf_at(orbit, x); }, 0.0, 1.0);
    QuadratureResult r;
    if (target == 1.0)
        r = integrate_adaptive([&](double x) { return cdf_at(orbit, x); }, breaks, quad_tol);
    else
        r = integrate_adaptive([&](double x) { return survival_at(orbit, x); }, breaks, quad_tol);
    if (!r.converged)
        throw std::runtime_error("W1 quadrature did not converge");
    return r.value;
}

double w1_to_dirac(const AtomicMeasure& measure, double target)
{
    require_closed_unit(target, "target");
    double sum = 0.0;
    for (std::size_t i = 0; i < measure.size(); ++i)
        sum += measure.weights()[i] * std::abs(measure.atoms()[i] - target);
    return sum;
}

double tail_mass(const AtomicMeasure& measure, double target)
{
    double sum = 0.0;
    for (std::size_t i = 0; i < measure.size(); ++i)
        if (measure.atoms()[i] != target)
            sum += measure.weights()[i];
    return sum;
}

namespace {

ConvergenceReport run_atomic(const KernelParams& k, const InitialMeasure& initial, double tol,
                             std::size_t max_steps, Metric metric)
{
    const AtomicMeasure& start = initial.atomic();
    const double target = predict_limit(k, start).min_atom();
    ConvergenceReport report{k, initial.descriptor, metric, {}, target, std::nullopt};

    const auto distance = [&](const AtomicMeasure& m) {
        return metric == Metric::w1 ? w1_to_dirac(m, target) : tail_mass(m, target);
    };

    AtomicMeasure current = start;
    for (std::size_t step = 0;; ++step) {
        const double d = distance(current);
        report.distances.emplace_back(step, d);
        if (d <= tol) {
            report.converged_at = step;
            break;
        }
        if (step == max_steps)
            break;
        current = apply_once(k, current);
    }
    return report;
}

ConvergenceReport run_continuous(const KernelParams& k, const InitialMeasure& initial, double tol,
                                 std::size_t max_steps, Metric metric)
{
    if (metric != Metric::w1)
        throw std::invalid_argument("tail-mass metric is only defined for atomic measures");
    const double target = k.p() > 0.5 ? 1.0 : 0.0;
    ConvergenceReport report{k, initial.descriptor, metric, {}, target, std::nullopt};
    const double quad_tol = std::min(1e-10, tol * 1e-3);

    for (std::size_t step = 0; step <= max_steps; ++step) {
        // V^step lambda has CDF g^(step + 1).
        const DensityOrbit orbit(k, initial.continuous(), step + 1);
        const double d = w1_to_dirac(orbit, target, quad_tol);
        report.distances.emplace_back(step, d);
        if (d <= tol) {
            report.converged_at = step;
            break;
        }
    }
    return report;
}

} // namespace

ConvergenceReport run_to_convergence(const KernelParams& k, const InitialMeasure& initial,
                                     double tol, std::size_t max_steps, Metric metric)
{
    if (!(tol > 0.0))
        throw std::invalid_argument("tolerance must be positive");
    if (k.is_identity())
        return {k, initial.descriptor, metric, {{0, 0.0}}, IdentityLimit{}, 0};
    return initial.is_atomic() ? run_atomic(k, initial, tol, max_steps, metric)
                               : run_continuous(k, initial, tol, max_steps, metric);
}

double fixed_point_check(const KernelParams& k, double a)
{
    const AtomicMeasure image = apply_once(k, AtomicMeasure::dirac(a));
    return std::abs(image.weight_at(a) - 1.0);
}

} // namespace lqso
