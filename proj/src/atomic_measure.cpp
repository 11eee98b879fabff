#include "lqso/atomic_measure.hpp"

#include "lqso/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace lqso {

AtomicMeasure::AtomicMeasure(std::vector<double> atoms, std::vector<double> weights)
{
    if (atoms.size() != weights.size())
        throw std::invalid_argument("atoms and weights differ in length");
    if (atoms.empty())
        throw std::invalid_argument("atomic measure needs at least one atom");

    for (std::size_t i = 0; i < atoms.size(); ++i) {
        require_unit_point(atoms[i], "atom");
        if (!std::isfinite(weights[i]) || weights[i] < 0.0)
            throw std::invalid_argument("weights must be finite and nonnegative");
        if (i > 0 && atoms[i] < atoms[i - 1])
            throw std::invalid_argument("atoms must be sorted in increasing order");
    }

    const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
    if (std::abs(total - 1.0) > sum_tolerance)
        throw std::invalid_argument("weights must sum to 1");

    for (std::size_t i = 0; i < atoms.size(); ++i) {
        if (weights[i] == 0.0)
            continue;
        if (!atoms_.empty() && atoms[i] - atoms_.back() <= merge_tolerance) {
            weights_.back() += weights[i];
            continue;
        }
        atoms_.push_back(atoms[i]);
        weights_.push_back(weights[i]);
    }
    if (atoms_.empty())
        throw std::invalid_argument("atomic measure has no positive weight");

    if (total != 1.0)
        for (double& w : weights_)
            w /= total;
}

AtomicMeasure AtomicMeasure::dirac(double a)
{
    return AtomicMeasure({a}, {1.0});
}

AtomicMeasure AtomicMeasure::from_pairs(std::vector<std::pair<double, double>> pairs)
{
    std::sort(pairs.begin(), pairs.end());
    std::vector<double> atoms, weights;
    atoms.reserve(pairs.size());
    weights.reserve(pairs.size());
    for (const auto& [a, w] : pairs) {
        atoms.push_back(a);
        weights.push_back(w);
    }
    return AtomicMeasure(std::move(atoms), std::move(weights));
}

double AtomicMeasure::weight_at(double a) const noexcept
{
    const auto it = std::lower_bound(atoms_.begin(), atoms_.end(), a);
    if (it == atoms_.end() || *it != a)
        return 0.0;
    return weights_[std::size_t(it - atoms_.begin())];
}

double AtomicMeasure::total_mass() const noexcept
{
    return std::accumulate(weights_.begin(), weights_.end(), 0.0);
}

} // namespace lqso
