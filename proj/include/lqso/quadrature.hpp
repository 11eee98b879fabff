#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace lqso {

struct QuadratureResult {
    double value = 0.0;
    double abs_error = 0.0;
    std::size_t intervals = 0;
    bool converged = true;
};

inline constexpr std::size_t default_max_intervals = std::size_t{1} << 20;

/// Globally adaptive Gauss-Kronrod (7,15) integration. The panel with the
/// largest error estimate is bisected until the summed estimate drops to
/// `abs_tol` or `max_intervals` panels exist; in the latter case the result
/// carries converged = false.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    double abs_tol,
                                    std::size_t max_intervals = default_max_intervals);

/// Same, starting from the panels between consecutive `breakpoints`
/// (sorted, at least two). Use it when the integrand's mass is known to sit
/// in a region too narrow for a single panel to notice.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    const std::vector<double>& breakpoints, double abs_tol,
                                    std::size_t max_intervals = default_max_intervals);

} // namespace lqso
