#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace lqso {

namespace detail {
struct MeasureAccess;
}

/// Finite convex combination of Dirac measures on [0,1).
///
/// Atoms are kept strictly increasing. Construction coalesces atoms closer
/// than `merge_tolerance`, drops zero weights and renormalizes once the
/// total is within `sum_tolerance` of one.
class AtomicMeasure {
public:
    static constexpr double merge_tolerance = 1e-12;
    static constexpr double sum_tolerance = 1e-12;

    AtomicMeasure(std::vector<double> atoms, std::vector<double> weights);

    static AtomicMeasure dirac(double a);

    /// Build from unsorted (atom, weight) pairs.
    static AtomicMeasure from_pairs(std::vector<std::pair<double, double>> pairs);

    std::span<const double> atoms() const noexcept { return atoms_; }
    std::span<const double> weights() const noexcept { return weights_; }
    std::size_t size() const noexcept { return atoms_.size(); }

    double min_atom() const noexcept { return atoms_.front(); }
    double max_atom() const noexcept { return atoms_.back(); }

    /// Weight at `a`, zero if `a` is not an atom (exact match).
    double weight_at(double a) const noexcept;

    double total_mass() const noexcept;

    friend bool operator==(const AtomicMeasure&, const AtomicMeasure&) = default;

private:
    struct Unchecked {};
    AtomicMeasure(Unchecked, std::vector<double> atoms, std::vector<double> weights)
        : atoms_(std::move(atoms)), weights_(std::move(weights))
    {
    }

    friend struct detail::MeasureAccess;

    std::vector<double> atoms_;
    std::vector<double> weights_;
};

} // namespace lqso
