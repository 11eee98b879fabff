#pragma once

#include "lqso/atomic_measure.hpp"
#include "lqso/kernel.hpp"

#include <cstddef>
#include <vector>

namespace lqso {

/// Weights below this are removed after a step.
inline constexpr double weight_drop_threshold = 1e-300;

struct DroppedAtom {
    std::size_t step; // step at which the atom vanished
    double atom;
};

struct AtomicTrajectory {
    KernelParams params;
    std::vector<AtomicMeasure> steps; // steps[0] is the initial measure
    std::vector<DroppedAtom> dropped;

    const AtomicMeasure& last() const { return steps.back(); }
};

/// One application of the operator. New weight of atom k is
/// w_k (w_k + 2q sum_{j<k} w_j + 2p sum_{j>k} w_j), O(m) via prefix and
/// suffix sums. `dropped`, when given, receives atoms that underflowed.
AtomicMeasure apply_once(const KernelParams& k, const AtomicMeasure& measure,
                         std::vector<double>* dropped = nullptr);

AtomicTrajectory iterate(const KernelParams& k, const AtomicMeasure& measure, std::size_t n);

/// Dirac at the smallest atom for p > 1/2, at the largest for p < 1/2, the
/// measure itself at p = 1/2.
AtomicMeasure predict_limit(const KernelParams& k, const AtomicMeasure& measure);

namespace reference {

/// (V lambda)({a_k}) = sum_{i,j} w_i w_j P(a_i, a_j, {a_k}) evaluated
/// literally from the kernel. O(m^3); used as the brute-force oracle.
std::vector<double> apply_double_sum(const KernelVariant& kernel, const AtomicMeasure& measure);

} // namespace reference

} // namespace lqso
