#include "lqso/atomic_dynamics.hpp"

#include <cmath>
#include <stdexcept>

namespace lqso {

namespace detail {
struct MeasureAccess {
    static AtomicMeasure make(std::vector<double> atoms, std::vector<double> weights)
    {
        return AtomicMeasure(AtomicMeasure::Unchecked{}, std::move(atoms), std::move(weights));
    }
};
} // namespace detail

AtomicMeasure apply_once(const KernelParams& k, const AtomicMeasure& measure,
                         std::vector<double>* dropped)
{
    const auto atoms = measure.atoms();
    const auto w = measure.weights();
    const std::size_t m = w.size();
    const double two_p = 2.0 * k.p();
    const double two_q = 2.0 * k.q();

    // suffix[i] = sum_{j >= i} w_j, summed from the small tail upwards so
    // that tiny tail masses keep full relative precision.
    std::vector<double> suffix(m + 1, 0.0);
    for (std::size_t i = m; i-- > 0;)
        suffix[i] = suffix[i + 1] + w[i];

    std::vector<double> new_atoms;
    std::vector<double> new_weights;
    new_atoms.reserve(m);
    new_weights.reserve(m);

    double below = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double updated = w[i] * (w[i] + two_q * below + two_p * suffix[i + 1]);
        below += w[i];
        if (updated < weight_drop_threshold) {
            if (dropped)
                dropped->push_back(atoms[i]);
            continue;
        }
        new_atoms.push_back(atoms[i]);
        new_weights.push_back(updated);
    }
    if (new_atoms.empty())
        throw std::runtime_error("all weights underflowed");
    // The new total is (old total)^2, so rounding drift in the mass doubles
    // every step unless it is removed here.
    double total = 0.0;
    for (std::size_t i = new_weights.size(); i-- > 0;)
        total += new_weights[i];
    for (double& v : new_weights)
        v /= total;
    return detail::MeasureAccess::make(std::move(new_atoms), std::move(new_weights));
}

AtomicTrajectory iterate(const KernelParams& k, const AtomicMeasure& measure, std::size_t n)
{
    AtomicTrajectory traj{k, {measure}, {}};
    traj.steps.reserve(n + 1);
    std::vector<double> dropped;
    for (std::size_t step = 1; step <= n; ++step) {
        dropped.clear();
        traj.steps.push_back(apply_once(k, traj.steps.back(), &dropped));
        for (double a : dropped)
            traj.dropped.push_back({step, a});
    }
    return traj;
}

AtomicMeasure predict_limit(const KernelParams& k, const AtomicMeasure& measure)
{
    if (k.p() > 0.5)
        return AtomicMeasure::dirac(measure.min_atom());
    if (k.p() < 0.5)
        return AtomicMeasure::dirac(measure.max_atom());
    return measure;
}

namespace reference {

std::vector<double> apply_double_sum(const KernelVariant& kernel, const AtomicMeasure& measure)
{
    const auto a = measure.atoms();
    const auto w = measure.weights();
    std::vector<double> out(a.size(), 0.0);
    for (std::size_t k = 0; k < a.size(); ++k) {
        const Interval target = Interval::point(a[k]);
        double sum = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < a.size(); ++j)
                sum += w[i] * w[j] * kernel_probability(kernel, a[i], a[j], target);
        out[k] = sum;
    }
    return out;
}

} // namespace reference

} // namespace lqso
