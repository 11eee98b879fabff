#pragma once

#include "lqso/atomic_measure.hpp"
#include "lqso/cdf_dynamics.hpp"
#include "lqso/initial_measure.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace lqso {

enum class Metric { w1, tail_mass };

std::string to_string(Metric m);

/// Limit of a p = 1/2 run: nothing moves.
struct IdentityLimit {
    friend bool operator==(IdentityLimit, IdentityLimit) = default;
};

/// Location of the limiting Dirac measure, or the identity marker.
using PredictedLimit = std::variant<double, IdentityLimit>;

struct ConvergenceReport {
    KernelParams params;
    std::string initial;
    Metric metric;
    std::vector<std::pair<std::size_t, double>> distances; // (step, value)
    PredictedLimit predicted_limit;
    std::optional<std::size_t> converged_at;
};

/// W1 distance between the measure with CDF cdf_at(orbit, .) and the Dirac
/// at `target`, which must be 0 or 1: the area under the CDF (target 1) or
/// under the survival function (target 0).
double w1_to_dirac(const DensityOrbit& orbit, double target, double quad_tol = 1e-10);

/// sum_i w_i |a_i - target| for any target in [0,1].
double w1_to_dirac(const AtomicMeasure& measure, double target);

/// Mass carried by atoms other than `target`.
double tail_mass(const AtomicMeasure& measure, double target);

/// Iterates until the distance to the predicted Dirac limit is <= tol or
/// max_steps is reached. Distances are recorded for step 0 (the initial
/// measure) onward. Continuous data converge to the Dirac at 1 for p > 1/2
/// and at 0 for p < 1/2; atomic data to the smallest (p > 1/2) or largest
/// (p < 1/2) atom. At p = 1/2 the report short-circuits as "identity".
ConvergenceReport run_to_convergence(const KernelParams& k, const InitialMeasure& initial,
                                     double tol, std::size_t max_steps,
                                     Metric metric = Metric::w1);

/// |(V delta_a)({a}) - 1| through the atomic update.
double fixed_point_check(const KernelParams& k, double a);

} // namespace lqso
